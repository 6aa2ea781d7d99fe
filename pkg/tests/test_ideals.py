import math

import pytest
import sympy

from polarvc import (
    LEX,
    Ideal,
    ResourceLimit,
    eliminate,
    groebner,
    intersect,
    local_dimension,
    local_quotient_dim,
    parse,
    quotient,
    saturate,
    standard_basis_local,
    step_budget,
    vanishes_on_component,
)
from polarvc.ideals import spolys_reduce_to_zero
from polarvc._sym import to_sympy

from conftest import XY, XYZ, ideal, poly


def basis_strings(I, order=LEX):
    return sorted(g.to_str() for g in groebner(I, order).basis)


def test_groebner_examples():
    assert basis_strings(ideal("x", "y")) == ["x", "y"]
    assert basis_strings(ideal("y - x^2", "y")) == ["x^2", "y"]
    assert basis_strings(ideal("x^2 - 1", "x - 1")) == ["x - 1"]


@pytest.mark.parametrize(
    "gens, variables",
    [
        (["x^2 + 2*x*y^2", "x*y + 2*y^3 - 1"], XY),
        (["x - z^2", "y - z^3"], XYZ),
        (["-x^2 + y", "-x^3 + z"], XYZ),
        (["x^3 - 2*x*y", "x^2*y + x - 2*y^2"], XY),
    ],
)
def test_groebner_matches_sympy(gens, variables):
    I = Ideal([parse(g, variables) for g in gens], variables)
    ours = groebner(I, LEX)
    syms = sympy.symbols(" ".join(variables))
    theirs = sympy.groebner([to_sympy(p)[0] for p in I.generators], *syms, order="lex")
    assert len(ours.basis) == len(theirs.exprs)
    for g, h in zip(ours.basis, sorted(theirs.exprs, key=lambda e: sympy.Poly(e, *syms).monoms(order="lex")[0])):
        assert sympy.expand(to_sympy(g)[0] * sympy.Poly(h, *syms).LC(order="lex") - h) == 0


def test_buchberger_criterion_on_returned_bases():
    for I in [ideal("x^3 - y^2", "x*y - 1"), ideal("x*y", "y^2 - x"), ideal("x^2*y + y^3", "x^3")]:
        assert spolys_reduce_to_zero(groebner(I))
        assert spolys_reduce_to_zero(standard_basis_local(I))


def test_local_staircases():
    assert sorted(standard_basis_local(ideal("2*x", "3*y^2")).staircase) == [(0, 2), (1, 0)]
    assert list(standard_basis_local(ideal("x + x^2")).staircase) == [(1, 0)]
    assert sorted(standard_basis_local(ideal("y^2 - x^3", "x")).staircase) == [(0, 2), (1, 0)]


@pytest.mark.parametrize(
    "gens, expected",
    [(("2*x", "3*y^2"), 2), (("2*x", "2*y"), 1), (("3*x^2", "4*y^3"), 6), (("x*(1-y)", "y*(1-x)"), 1)],
)
def test_local_quotient_dim(gens, expected):
    assert local_quotient_dim(ideal(*gens)) == expected


def test_local_vs_global_count():
    # x(x-1) has two points globally but only one at the origin
    assert local_quotient_dim(ideal("x*(x-1)", "y")) == 1
    assert local_quotient_dim(ideal("x*y")) == math.inf


def test_local_dimension():
    assert local_dimension(ideal("x*y")) == 1
    assert local_dimension(ideal("x", "y")) == 0
    assert local_dimension(ideal("x - 1")) == -math.inf


def test_saturation_examples():
    assert saturate(ideal("x*y"), ideal("x")).equals(ideal("y"))
    assert saturate(ideal("x*y"), ideal("x^4", "y")).equals(ideal("x*y"))
    assert saturate(ideal("x^2*y^3"), ideal("y")).equals(ideal("x^2"))


def test_quotient_and_intersection():
    assert quotient(ideal("x^2*y"), ideal("x")).equals(ideal("x*y"))
    assert intersect(ideal("x"), ideal("y")).equals(ideal("x*y"))


def test_elimination_examples():
    V = ("x", "u", "v")
    I = Ideal([parse("u - x^2", V), parse("v - x^3", V)], V)
    E = eliminate(I, ["u", "v"])
    assert E.equals(Ideal([parse("u^3 - v^2", V)], V))
    J = Ideal([parse("u - x", V), parse("v - x", V)], V)
    assert eliminate(J, ["u", "v"]).equals(Ideal([parse("u - v", V)], V))
    assert eliminate(J, [0, 1, 2]) is J


def test_vanishing_on_prime():
    assert vanishes_on_component(poly("y"), ideal("y"))
    assert not vanishes_on_component(poly("x"), ideal("y"))
    assert not vanishes_on_component(poly("y^2 - x^3"), ideal("3*y^2 - 2*x"))


def test_membership_is_semantic():
    I = ideal("x^2 - y", "y")
    assert I.contains(poly("x^2"))
    assert I.equals(ideal("y", "x^2"))
    assert not I.contains(poly("x"))


def test_budget_raises():
    with step_budget(1):
        with pytest.raises(ResourceLimit):
            groebner(ideal("x^5 - y^3 + x*y", "x^3*y - y^4 + 7*x"))
