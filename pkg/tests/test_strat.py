import pytest

from polarvc import (
    HypothesisViolated,
    IsolationCheckFailed,
    ModuleDescription,
    RingNotIntegralDomain,
    StratifiedComplexSpec,
    StratumData,
    StratumGeometry,
    braden_conic_check,
    characteristic_cycle,
    constant_sheaf,
    coordinate_cross,
    discriminant_check,
    euler_index_isolated,
    stalk_general,
    stalk_generic_linear,
    stalk_isolated,
)
from polarvc.strat import PENCIL_MARKER, table_euler

from conftest import XY, XYZ, poly

PLANE = constant_sheaf(XY)


def ranks(table):
    return {k: m.rank for k, m in table.items()}


def test_module_tensor():
    m = ModuleDescription(2, ("Z/2",))
    assert m.tensor(3) == ModuleDescription(6, ("Z/2",) * 3)
    assert m.tensor(0).is_zero()


def test_characteristic_cycle():
    assert characteristic_cycle(PLANE) == {"ambient": 1}
    one = StratumData(StratumGeometry("S", XY), {0: ModuleDescription(1), 1: ModuleDescription(2)})
    assert characteristic_cycle(StratifiedComplexSpec(XY, (one,))) == {"S": -1}
    empty = StratumData(StratumGeometry("S", XY), {})
    assert characteristic_cycle(StratifiedComplexSpec(XY, (empty,))) == {}


def test_characteristic_cycle_needs_domain():
    spec = StratifiedComplexSpec(XY, PLANE.strata, integral_domain=False)
    with pytest.raises(RingNotIntegralDomain):
        characteristic_cycle(spec)


def test_stalk_isolated():
    assert ranks(stalk_isolated(PLANE, poly("x^2 + y^3")).table) == {2: 2}
    assert ranks(stalk_isolated(constant_sheaf(XYZ), poly("x^2 + y^2 + z^2", XYZ)).table) == {3: 1}
    assert stalk_isolated(PLANE, poly("x + y^2")).table == {}


def test_stalk_isolated_rejects_line_singularity():
    with pytest.raises(IsolationCheckFailed):
        stalk_isolated(PLANE, poly("x^2*y"))


def test_euler_index():
    assert euler_index_isolated(PLANE, poly("x^2 + y^3")) == 2
    assert euler_index_isolated(constant_sheaf(XYZ), poly("x^2 + y^2 + z^2", XYZ)) == -1


def test_euler_index_two_strata():
    # c = 1 on the dense stratum (delta 3); c = 2 on a line missing the origin (delta 0)
    dense = StratumData(StratumGeometry("dense", XY), {2: ModuleDescription(1)})
    line = StratumData(StratumGeometry("line", XY, (poly("x - 1"),)), {1: ModuleDescription(0), 2: ModuleDescription(2)})
    spec = StratifiedComplexSpec(XY, (dense, line))
    assert characteristic_cycle(spec) == {"dense": 1, "line": 2}
    assert euler_index_isolated(spec, poly("x^2 + y^4")) == 3
    through = StratumData(StratumGeometry("line", XY, (poly("x"),)), {2: ModuleDescription(2)})
    spec = StratifiedComplexSpec(XY, (dense, through))
    assert euler_index_isolated(spec, poly("x^2 + y^4")) == 1 * 3 + 2 * 3


def test_generic_linear_non_isolated():
    rep = stalk_generic_linear(PLANE, poly("x^2*y"))
    assert ranks(rep.table) == {2: 2}
    assert rep.extras["c0_phi_f"] == 2


def test_generic_linear_cross():
    rep = stalk_generic_linear(coordinate_cross(), poly("x + y"))
    assert rep.extras["deltas"] == {"x-axis": 0, "y-axis": 0}
    assert ranks(rep.table) == {1: 1}


def test_generic_linear_symbolic_point_term():
    spec = coordinate_cross()
    strata = (StratumData(spec.strata[0].geometry, None),) + spec.strata[1:]
    rep = stalk_generic_linear(StratifiedComplexSpec(XY, strata), poly("x + y"))
    assert rep.table is None and rep.warnings


@pytest.mark.parametrize(
    "f, g, delta, pencil, total",
    [("y^2 - x^3", "y", 2, 0, 2), ("y^2 - x^3", "x", 2, 0, 2), ("y^2 - x^5", "x^2", 3, 1, 4)],
)
def test_stalk_general(f, g, delta, pencil, total):
    rep = stalk_general(PLANE, poly(f), poly(g))
    assert [t.delta for t in rep.terms] == [delta]
    assert sum(m.rank for m in rep.pencil.table.values()) == pencil
    assert ranks(rep.table) == {2: total}
    assert rep.table == stalk_isolated(PLANE, poly(f)).table


def test_stalk_general_hypothesis():
    with pytest.raises(HypothesisViolated) as info:
        stalk_general(PLANE, poly("x^2*y"), poly("y"))
    assert info.value.report.offending == (("ambient", "y"),)


def test_stalk_general_symbolic_pencil():
    rep = stalk_general(PLANE, poly("x^2*y"), poly("x^3"))
    assert rep.pencil == PENCIL_MARKER and rep.table is None


def test_braden():
    spec = coordinate_cross({"origin": {1: ModuleDescription(3)}, "x-axis": {1: ModuleDescription(3)}})
    rec = braden_conic_check(spec, poly("x"))
    assert rec.all_deltas_zero and rec.c0_preserved
    rec = braden_conic_check(PLANE, poly("x"))
    assert rec.all_deltas_zero


def test_braden_negative_control():
    origin = StratumGeometry("origin", XY, (poly("x"), poly("y")))
    parabola = StratumGeometry("parabola", XY, (poly("y - x^2"),))
    spec = StratifiedComplexSpec(
        XY,
        (StratumData(origin, {1: ModuleDescription(1)}), StratumData(parabola, {1: ModuleDescription(1)})),
    )
    rec = braden_conic_check(spec, poly("y"))
    assert not rec.all_deltas_zero and not rec.c0_preserved


@pytest.mark.parametrize("f, g", [("y^2 - x^3", "y"), ("y^2 - x^3", "x"), ("y^2 - x^5", "x^2")])
def test_discriminant(f, g):
    rec = discriminant_check(PLANE, poly(f), poly(g))
    assert rec.agree and rec.delta_hat_total == rec.downstairs_total


def test_discriminant_empty_polar():
    rec = discriminant_check(PLANE, poly("x"), poly("y"))
    assert (rec.delta_hat_total, rec.downstairs_total, rec.agree) == (0, 0, True)


def test_table_is_sum_of_tensored_terms():
    rep = stalk_general(PLANE, poly("y^2 - x^5"), poly("x^2"))
    expected = {}
    for t in rep.terms:
        for k, m in t.morse.items():
            expected[k] = expected.get(k, 0) + m.rank * t.delta
    for k, m in rep.pencil.table.items():
        expected[k] = expected.get(k, 0) + m.rank
    assert ranks(rep.table) == expected
    assert rep.euler == table_euler(rep.table)
