"""Relative polar curves of a pair (f, g) along the strata of a stratified space.

For a stratum S with closure V(q_1, ..., q_c) the polar scheme is the
locus where df, dg and the dq_i are linearly dependent, closed up over the
part of S where f|_S is a submersion.  Its one-dimensional components
through the origin form the polar cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curves import PrimaryComponent, decompose_curve_at_origin
from .errors import ConstantOnStratum, NotACurve
from .ideals import Ideal, local_dimension, saturate, vanishes_on_component
from .poly import Polynomial, jacobian, maximal_minors


@dataclass(frozen=True)
class StratumGeometry:
    """A stratum given by the complete-intersection equations of its closure.

    ``equations`` is empty for the dense stratum of the ambient space.
    Smoothness of the stratum away from its boundary is assumed, not checked.
    """

    name: str
    variables: tuple
    equations: tuple = ()
    dim: int | None = None
    smooth: bool = True

    def __post_init__(self):
        eqs = tuple(q.in_ring(self.variables) for q in self.equations)
        object.__setattr__(self, "equations", eqs)
        expected = len(self.variables) - len(eqs)
        if self.dim is None:
            object.__setattr__(self, "dim", expected)
        elif self.dim != expected:
            raise ValueError(
                f"stratum {self.name}: dimension {self.dim} does not match "
                f"{len(self.variables)} variables minus {len(eqs)} equations"
            )

    @property
    def closure(self) -> Ideal:
        return Ideal(list(self.equations), self.variables)

    @property
    def codim(self) -> int:
        return len(self.equations)

    def contains_origin(self) -> bool:
        return all(q.constant_term() == 0 for q in self.equations)


def is_constant_on(f: Polynomial, S: StratumGeometry) -> bool:
    """Whether f restricted to the germ of S at the origin is constant.

    Compares the germ dimension of S with that of S cut by f = f(0).
    """
    if not S.contains_origin():
        return True
    f = f.in_ring(S.variables)
    shifted = f - f.constant_term()
    if shifted.is_zero():
        return True
    if S.dim == 0:
        return True
    return local_dimension(S.closure + shifted) == local_dimension(S.closure)


def critical_locus(S: StratumGeometry, f: Polynomial) -> Ideal:
    """Points of the closure of S where f|_S fails to be a submersion."""
    rows = jacobian(list(S.equations) + [f.in_ring(S.variables)])
    return Ideal(list(S.equations) + maximal_minors(rows, S.codim + 1), S.variables)


def critical_scheme(S: StratumGeometry, f: Polynomial, g: Polynomial) -> Ideal:
    """Rank-drop scheme of (dq, df, dg), saturated by the critical locus of f|_S."""
    if is_constant_on(f, S):
        raise ConstantOnStratum(f"{f} is constant on stratum {S.name}")
    f = f.in_ring(S.variables)
    g = g.in_ring(S.variables)
    rows = jacobian(list(S.equations) + [f, g])
    raw = Ideal(list(S.equations) + maximal_minors(rows, S.codim + 2), S.variables)
    crit = critical_locus(S, f)
    if raw.is_zero():
        return raw
    return saturate(raw, crit)


@dataclass(frozen=True)
class PolarBranch:
    component: PrimaryComponent
    through_origin: bool
    in_Vf: bool
    in_Vg: bool


@dataclass(frozen=True)
class PolarCycle:
    stratum: str
    branches: tuple = field(default_factory=tuple)

    @property
    def components(self) -> list:
        return [b.component for b in self.branches]

    @property
    def hat(self) -> list:
        """Branches through the origin that do not lie in V(g)."""
        return [b for b in self.branches if b.through_origin and not b.in_Vg]


def polar_cycle(S: StratumGeometry, f: Polynomial, g: Polynomial) -> PolarCycle:
    scheme = critical_scheme(S, f, g)
    d = local_dimension(scheme)
    if d < 1:
        return PolarCycle(S.name, ())
    if d > 1:
        raise NotACurve(d, f"polar set of stratum {S.name} is {scheme}")
    f = f.in_ring(S.variables)
    g = g.in_ring(S.variables)
    branches = []
    for comp in decompose_curve_at_origin(scheme):
        branches.append(
            PolarBranch(
                comp,
                through_origin=comp.prime.in_origin(),
                in_Vf=vanishes_on_component(f, comp.prime),
                in_Vg=vanishes_on_component(g, comp.prime),
            )
        )
    return PolarCycle(S.name, tuple(branches))


@dataclass(frozen=True)
class HypothesisReport:
    ok: bool
    offending: tuple = ()
    cycles: tuple = ()

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"component ({p}) of stratum {s} lies in V(f)" for s, p in self.offending)


def relevant_strata(spec, f: Polynomial) -> list:
    """Visible strata of positive dimension through the origin on which f is not constant."""
    out = []
    for entry in spec.visible():
        S = entry.geometry
        if S.dim >= 1 and S.contains_origin() and not is_constant_on(f, S):
            out.append(entry)
    return out


def check_hypothesis(spec, f: Polynomial, g: Polynomial) -> HypothesisReport:
    """Whether V(f) meets the polar curves of all relevant strata only at the origin."""
    offending = []
    cycles = []
    for entry in relevant_strata(spec, f):
        cyc = polar_cycle(entry.geometry, f, g)
        cycles.append(cyc)
        for b in cyc.branches:
            if b.through_origin and b.in_Vf:
                offending.append((cyc.stratum, b.component.label()))
    return HypothesisReport(not offending, tuple(offending), tuple(cycles))
