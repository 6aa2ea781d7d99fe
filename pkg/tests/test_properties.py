import json
import random

import pytest
import yaml
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from polarvc import (
    DEGREVLEX,
    INFINITY,
    LEX,
    Ideal,
    NonProperIntersection,
    PrimaryComponent,
    Polynomial,
    StratumGeometry,
    component_intersection_number,
    constant_sheaf,
    decompose_curve_at_origin,
    delta_generic_linear,
    delta_hat,
    discriminant_check,
    euler_index_isolated,
    groebner,
    local_quotient_dim,
    milnor_number,
    normal_form,
    ord_along,
    parse,
    partial_derivative,
    puiseux_branches,
    puiseux_intersection_number,
    random_linear_form,
    saturate,
    spolys_reduce_to_zero,
    stalk_general,
    stalk_generic_linear,
    stalk_isolated,
    standard_basis_local,
    step_budget,
)
from polarvc.cli import run

from conftest import XY, XYZ, poly, polar_sweep

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

ISOLATED = ["x^2 + y^2", "x^2 + y^3", "x^3 + y^4", "x^2 + y^5"]
PAIRS = [("y^2 - x^3", "y"), ("y^2 - x^3", "x"), ("y^2 - x^5", "x^2")]


def polys(variables=XY, max_degree=3, max_terms=4, coeff=5):
    n = len(variables)
    exps = st.tuples(*[st.integers(0, max_degree)] * n).filter(lambda e: sum(e) <= max_degree)
    terms = st.dictionaries(exps, st.integers(-coeff, coeff).filter(bool), max_size=max_terms)
    return terms.map(lambda t: Polynomial(t, variables))


def germs(variables=XY, max_degree=3):
    # polynomials vanishing at the origin
    return polys(variables, max_degree).filter(lambda p: not p.is_zero() and p.constant_term() == 0)


# -- polynomial arithmetic --------------------------------------------------------


@SETTINGS
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@SETTINGS
@given(polys(), polys(), st.sampled_from(XY))
def test_leibniz(p, q, var):
    d = partial_derivative
    assert d(p * q, var) == p * d(q, var) + q * d(p, var)


@SETTINGS
@given(polys(XYZ))
def test_parse_print_roundtrip(p):
    assert parse(str(p), XYZ) == p
    assert str(parse(str(p), XYZ)) == str(p)


BRANCH_CURVES = ["y^2 - x^3", "y - x^2", "x", "y^3 - x^5", "x^2 + y^2"]


@SETTINGS
@given(st.sampled_from(BRANCH_CURVES), germs(), germs())
def test_order_along_branch_is_additive(curve, p, q):
    for b in puiseux_branches(poly(curve)):
        op, oq = ord_along(p, b), ord_along(q, b)
        if INFINITY in (op, oq):
            continue
        assert ord_along(p * q, b) == op + oq


# -- ideal layer ------------------------------------------------------------------


def ideals(variables=XY):
    return st.lists(germs(variables), min_size=1, max_size=3).map(lambda gs: Ideal(gs, variables))


@SETTINGS
@given(ideals(), st.sampled_from([DEGREVLEX, LEX]))
def test_buchberger_criterion_global(I, order):
    assert spolys_reduce_to_zero(groebner(I, order))


@SETTINGS
@given(ideals(XYZ))
def test_buchberger_criterion_local(I):
    with step_budget(200_000):
        assert spolys_reduce_to_zero(standard_basis_local(I))


@SETTINGS
@given(ideals(), germs())
def test_saturation_contains_and_is_idempotent(I, h):
    J = Ideal([h], XY)
    S = saturate(I, J)
    gb = groebner(S)
    assert all(normal_form(g, gb).is_zero() for g in I.generators)
    assert saturate(S, J).equals(S)


def linear_change(seed):
    rng = random.Random(seed)
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if a * d - b * c:
            break
    x, y = poly("x"), poly("y")
    return {0: a * x + b * y, 1: c * x + d * y}


@SETTINGS
@given(ideals(), st.integers(0, 10**6))
def test_local_length_invariant_under_linear_change(I, seed):
    J = Ideal([g.subs(linear_change(seed)) for g in I.generators], XY)
    assert local_quotient_dim(I) == local_quotient_dim(J)


# -- delta invariants -------------------------------------------------------------


@SETTINGS
@given(germs(max_degree=4), st.integers(0, 1000))
def test_generic_linear_delta_nonnegative(f, seed):
    S = StratumGeometry("ambient", XY)
    if f.is_zero():
        return
    rep = delta_generic_linear(S, f, seed)
    assert rep.total >= 0
    assert all(c.contribution >= 0 for c in rep.components)


def test_sweep_hat_contributions_nonnegative():
    contributions = [c for case in polar_sweep() for c in case.hat_contributions]
    assert contributions and min(contributions) >= 0


def test_sweep_has_no_zero_dimensional_polar_components():
    cases = polar_sweep()
    assert all(case.scheme_saturated for case in cases)
    assert all(d == 1 for case in cases for d in case.branch_dims)


@pytest.mark.parametrize("f", ISOLATED)
def test_mu_equals_delta(f):
    S = StratumGeometry("ambient", XY)
    assert delta_generic_linear(S, poly(f), 0).total == milnor_number(poly(f))


@pytest.mark.parametrize("f", ISOLATED)
def test_hat_delta_matches_generic_for_linear_g(f):
    S = StratumGeometry("ambient", XY)
    g = random_linear_form("hat-vs-generic", XY)
    assert delta_hat(S, poly(f), g).total == delta_generic_linear(S, poly(f), 0).total


# -- stalk formulas ---------------------------------------------------------------

PLANE = constant_sheaf(XY)


@pytest.mark.parametrize("f", ISOLATED)
def test_generic_g_reduction(f):
    g = random_linear_form("generic-g", XY)
    general = stalk_general(PLANE, poly(f), g)
    assert general.table == stalk_generic_linear(PLANE, poly(f)).table


@pytest.mark.parametrize("f", ISOLATED)
def test_euler_matches_table(f):
    rep = stalk_isolated(PLANE, poly(f))
    assert euler_index_isolated(PLANE, poly(f)) == rep.euler


@pytest.mark.parametrize("f, g", PAIRS)
def test_skyscraper_and_tensor_law(f, g):
    rep = stalk_general(PLANE, poly(f), poly(g))
    assert rep.table == stalk_isolated(PLANE, poly(f)).table
    for t in rep.terms:
        for k, m in t.table().items():
            assert m.rank == t.morse[k].rank * t.delta


@pytest.mark.parametrize("f, g", PAIRS + [(f, "x + 2*y") for f in ISOLATED])
def test_discriminant_agrees(f, g):
    assert discriminant_check(PLANE, poly(f), poly(g)).agree


# -- two routes to intersection numbers -------------------------------------------


@SETTINGS
@given(germs(max_degree=4), germs(max_degree=3))
def test_ideal_length_matches_puiseux(f, h):
    for comp in decompose_curve_at_origin(Ideal([f], XY)):
        try:
            a = component_intersection_number(comp, h)
        except NonProperIntersection:
            continue
        assert a == puiseux_intersection_number(comp, h)


def test_plane_component_primary_is_principal():
    (comp,) = decompose_curve_at_origin(Ideal([poly("(y^2 - x^3)^2")], XY))
    assert isinstance(comp, PrimaryComponent)
    assert comp.primary.generators == (poly("(y^2 - x^3)^2"),)


# -- reports ----------------------------------------------------------------------


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from(["stalk-general", "delta", "polar", "discriminant"]))
def test_json_report_is_deterministic(tmp_path_factory, seed, command):
    path = tmp_path_factory.mktemp("det") / "p.yaml"
    path.write_text(yaml.safe_dump({"variables": ["x", "y"], "f": "y^2 - x^3", "g": "y"}))
    first = run(command, path, seed=seed, fmt="json")
    assert first == run(command, path, seed=seed, fmt="json")
    assert first[0] == 0 and json.loads(first[1])["seed"] == seed
