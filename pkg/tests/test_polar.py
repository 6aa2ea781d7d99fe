import pytest

from polarvc import (
    ConstantOnStratum,
    StratumGeometry,
    check_hypothesis,
    constant_sheaf,
    critical_scheme,
    polar_cycle,
)
from polarvc.strat import coordinate_cross

from conftest import XY, XYZ, ideal, poly

DENSE = StratumGeometry("ambient", XY)


def test_scheme_of_cusp_against_vertical():
    assert critical_scheme(DENSE, poly("x^2 + y^3"), poly("x")).equals(ideal("y^2"))


def test_saturation_removes_critical_line():
    assert critical_scheme(DENSE, poly("x^2*y"), poly("y")).equals(ideal("y"))


def test_line_stratum_is_its_own_polar():
    line = StratumGeometry("x-axis", XY, (poly("y"),))
    assert critical_scheme(line, poly("x + y"), poly("3*x - 7*y")).equals(ideal("y"))
    (b,) = polar_cycle(line, poly("x + y"), poly("2*x + 5*y")).branches
    assert str(b.component.primary) == "(y)"


def test_constant_on_stratum():
    line = StratumGeometry("y-axis", XY, (poly("x"),))
    with pytest.raises(ConstantOnStratum):
        critical_scheme(line, poly("x"), poly("y"))


def flags(f, g):
    return [
        (b.component.label(), str(b.component.primary), b.through_origin, b.in_Vf, b.in_Vg)
        for b in polar_cycle(DENSE, poly(f), poly(g)).branches
    ]


def test_polar_cycles():
    assert flags("y^2 - x^3", "y") == [("x", "(x^2)", True, False, False)]
    assert flags("y^2 - x^5", "x^2") == [("x", "(x)", True, False, True), ("y", "(y)", True, False, False)]
    assert flags("x^2 + y^2", "x") == [("y", "(y)", True, False, False)]


def test_hat_filter():
    cyc = polar_cycle(DENSE, poly("y^2 - x^5"), poly("x^2"))
    assert [b.component.label() for b in cyc.hat] == ["y"]


def test_empty_polar_for_smooth_function():
    assert polar_cycle(DENSE, poly("x"), poly("y")).branches == ()


def test_hypothesis():
    spec = constant_sheaf(XY)
    bad = check_hypothesis(spec, poly("x^2*y"), poly("y"))
    assert not bad.ok and bad.offending == (("ambient", "y"),)
    assert check_hypothesis(spec, poly("y^2 - x^3"), poly("y")).ok
    assert check_hypothesis(spec, poly("x"), poly("y")).ok


def test_adding_stratum_equation_multiple_keeps_scheme():
    line = StratumGeometry("x-axis", XY, (poly("y"),))
    f, g = poly("x^2 + x^3"), poly("x + 2*y")
    base = critical_scheme(line, f, g)
    assert critical_scheme(line, f + poly("y*(x + 1)"), g).equals(base)


def test_space_polar():
    dense = StratumGeometry("ambient", XYZ)
    cyc = polar_cycle(dense, poly("x^2 + y^2 + z^2", XYZ), poly("x + 2*y + 3*z", XYZ))
    assert len(cyc.branches) == 1 and cyc.branches[0].through_origin


def test_cross_strata_relevant_set():
    spec = coordinate_cross()
    hyp = check_hypothesis(spec, poly("x"), poly("y"))
    assert hyp.ok and [c.stratum for c in hyp.cycles] == ["x-axis"]
