"""Stratified complexes described by Morse-module data, and the stalk formulas evaluated on them.

Morse modules are tracked as a rank plus opaque torsion labels.  Degrees
follow the convention m^k_S = H^(k - d_S) of the normal Morse data, so the
constant sheaf on a smooth n-dimensional ambient space has rank 1 at k = n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .curves import PrimaryComponent
from .delta import delta_generic_linear, delta_hat, delta_P
from .errors import (
    DegreeMismatch,
    GenericityFailure,
    HypothesisViolated,
    IsolationCheckFailed,
    RingNotIntegralDomain,
)
from .ideals import Ideal, eliminate, local_dimension
from ._sym import factor_rational, gcd_rational
from .polar import (
    StratumGeometry,
    check_hypothesis,
    critical_locus,
    is_constant_on,
    polar_cycle,
    relevant_strata,
)
from .curves import component_intersection_number
from .poly import Polynomial, random_linear_form

PENCIL_MARKER = "H^k(phi_{sigma*f+lambda*g} A)_0"


@dataclass(frozen=True)
class ModuleDescription:
    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        object.__setattr__(self, "torsion", tuple(self.torsion))

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def tensor(self, delta: int) -> "ModuleDescription":
        """Tensor with a free module of rank delta."""
        return ModuleDescription(self.rank * delta, self.torsion * delta)

    def __add__(self, other: "ModuleDescription") -> "ModuleDescription":
        return ModuleDescription(self.rank + other.rank, self.torsion + other.torsion)


@dataclass(frozen=True)
class StratumData:
    geometry: StratumGeometry
    morse: dict | None = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.geometry.name

    def is_visible(self) -> bool:
        return self.morse is None or any(not m.is_zero() for m in self.morse.values())

    def euler(self) -> int:
        return sum((-1) ** k * m.rank for k, m in self.morse.items())


@dataclass(frozen=True)
class StratifiedComplexSpec:
    variables: tuple
    strata: tuple
    integral_domain: bool = True

    def visible(self) -> list:
        return [s for s in self.strata if s.is_visible()]

    def point_stratum(self) -> StratumData | None:
        """The zero-dimensional stratum sitting at the origin, if there is one."""
        for s in self.strata:
            if s.geometry.dim == 0 and s.geometry.contains_origin():
                return s
        return None

    def stratum(self, name: str) -> StratumData:
        for s in self.strata:
            if s.name == name:
                return s
        raise KeyError(name)


def constant_sheaf(variables) -> StratifiedComplexSpec:
    """Constant coefficients on smooth affine space: a single dense stratum."""
    variables = tuple(variables)
    n = len(variables)
    dense = StratumData(StratumGeometry("ambient", variables), {n: ModuleDescription(1)})
    return StratifiedComplexSpec(variables, (dense,))


def coordinate_cross(morse=None, variables=("x", "y")) -> StratifiedComplexSpec:
    """The two coordinate axes of the plane, stratified as origin plus two punctured lines.

    ``morse`` maps stratum name ("origin", "x-axis", "y-axis") to a Morse
    table; by default each stratum has rank 1 in degree 1 (constant
    coefficients on the cross).
    """
    variables = tuple(variables)
    x = Polynomial.var(variables[0], variables)
    y = Polynomial.var(variables[1], variables)
    default = {1: ModuleDescription(1)}
    morse = morse or {}
    geoms = [
        StratumGeometry("origin", variables, (x, y)),
        StratumGeometry("x-axis", variables, (y,)),
        StratumGeometry("y-axis", variables, (x,)),
    ]
    strata = tuple(StratumData(g, dict(morse.get(g.name, default))) for g in geoms)
    return StratifiedComplexSpec(variables, strata)


def _sum_tables(parts) -> dict:
    table = {}
    for part in parts:
        for k, m in part.items():
            table[k] = table.get(k, ModuleDescription()) + m
    return {k: m for k, m in sorted(table.items()) if not m.is_zero()}


def table_euler(table: dict) -> int:
    return sum((-1) ** k * m.rank for k, m in table.items())


@dataclass(frozen=True)
class StalkTerm:
    stratum: str
    delta: int
    morse: dict | None

    def table(self) -> dict:
        if self.morse is None:
            return {}
        return {k: m.tensor(self.delta) for k, m in self.morse.items()}


@dataclass(frozen=True)
class StalkReport:
    mode: str
    terms: tuple
    pencil: object = None
    table: dict | None = None
    euler: int | None = None
    extras: dict = field(default_factory=dict)
    warnings: tuple = ()


def characteristic_cycle(spec: StratifiedComplexSpec) -> dict:
    """Alternating sum of Morse ranks for each visible stratum."""
    if not spec.integral_domain:
        raise RingNotIntegralDomain("characteristic cycle needs an integral domain of coefficients")
    out = {}
    for s in spec.visible():
        if s.morse is None:
            raise ValueError(f"stratum {s.name} has no Morse data")
        out[s.name] = s.euler()
    return out


def _resolved_table(terms, pencil=None):
    if any(t.morse is None for t in terms):
        return None
    parts = [t.table() for t in terms]
    if pencil is not None:
        if not isinstance(pencil, StalkReport) or pencil.table is None:
            return None
        parts.append(pencil.table)
    return _sum_tables(parts)


def _isolated_terms(spec, f, seed):
    terms = []
    for s in spec.visible():
        S = s.geometry
        if not S.contains_origin():
            continue
        if S.dim == 0:
            terms.append(StalkTerm(s.name, 1, s.morse))
            continue
        if is_constant_on(f, S):
            raise IsolationCheckFailed(f"f is constant on stratum {s.name}")
        if local_dimension(critical_locus(S, f)) > 0:
            raise IsolationCheckFailed(f"f has non-isolated critical points on stratum {s.name}")
        ell = random_linear_form(f"{seed}/0/0", spec.variables)
        for b in polar_cycle(S, f, ell).branches:
            if b.through_origin and b.in_Vf:
                raise IsolationCheckFailed(f"generic polar curve of {s.name} lies in V(f)")
        rep = delta_generic_linear(S, f, seed)
        terms.append(StalkTerm(s.name, rep.total, s.morse))
    return terms


def stalk_isolated(spec: StratifiedComplexSpec, f: Polynomial, seed=0) -> StalkReport:
    """Stalk of the vanishing cycles of f at an isolated point of its support."""
    f = f.in_ring(spec.variables)
    terms = _isolated_terms(spec, f, seed)
    table = _resolved_table(terms)
    euler = table_euler(table) if table is not None and spec.integral_domain else None
    return StalkReport("iso", tuple(terms), None, table, euler)


def euler_index_isolated(spec: StratifiedComplexSpec, f: Polynomial, seed=0) -> int:
    """Sum of c_S * delta_S over visible strata through the origin."""
    cc = characteristic_cycle(spec)
    report = stalk_isolated(spec, f, seed)
    chi = sum(cc[t.stratum] * t.delta for t in report.terms)
    if report.table is not None and chi != table_euler(report.table):
        raise ArithmeticError(f"index {chi} disagrees with stalk table Euler characteristic")
    return chi


def stalk_generic_linear(spec: StratifiedComplexSpec, f: Polynomial, seed=0) -> StalkReport:
    """Vanishing cycles of a generic linear form on the vanishing cycles of f."""
    f = f.in_ring(spec.variables)
    point = spec.point_stratum()
    terms = []
    warnings = []
    if point is not None:
        terms.append(StalkTerm(point.name, 1, point.morse))
        if point.morse is None:
            warnings.append(f"Morse data of point stratum {point.name} is symbolic")
    deltas = {}
    for s in relevant_strata(spec, f):
        rep = delta_generic_linear(s.geometry, f, seed)
        deltas[s.name] = rep.total
        terms.append(StalkTerm(s.name, rep.total, s.morse))
        if rep.retries:
            warnings.append(f"stratum {s.name}: {rep.retries} genericity retries")
    table = _resolved_table(terms)
    extras = {"deltas": deltas}
    euler = None
    if spec.integral_domain and table is not None:
        cc = characteristic_cycle(spec)
        c0 = cc.get(point.name, 0) if point is not None else 0
        extras["c0"] = c0
        extras["c0_phi_f"] = c0 + sum(d * cc[name] for name, d in deltas.items())
        euler = table_euler(table)
    return StalkReport("generic_linear", tuple(terms), None, table, euler, extras, tuple(warnings))


def _pencil_coefficients(seed, attempt, k):
    rng = random.Random(f"pencil:{seed}/{attempt}/{k}")
    pick = lambda: rng.choice([i for i in range(-50, 51) if i])
    return pick(), pick()


def _pencil_report(spec, f, g, seed, attempt, k):
    sigma, lam = _pencil_coefficients(seed, attempt, k)
    h = f * sigma + g * lam
    try:
        rep = stalk_isolated(spec, h, f"{seed}/pencil/{attempt}/{k}")
    except IsolationCheckFailed:
        rep = None
    return (sigma, lam), rep


def stalk_general(spec: StratifiedComplexSpec, f: Polynomial, g: Polynomial, seed=0) -> StalkReport:
    """Vanishing cycles of g on the vanishing cycles of f, split into pencil and delta-hat parts."""
    f = f.in_ring(spec.variables)
    g = g.in_ring(spec.variables)
    hyp = check_hypothesis(spec, f, g)
    if not hyp.ok:
        raise HypothesisViolated(hyp)
    terms = []
    deltas = {}
    for s in relevant_strata(spec, f):
        rep = delta_hat(s.geometry, f, g)
        deltas[s.name] = rep.total
        terms.append(StalkTerm(s.name, rep.total, s.morse))
    warnings = []
    pencil = None
    coeffs = None
    for attempt in range(3):
        (c1, r1), (_, r2) = (_pencil_report(spec, f, g, seed, attempt, k) for k in (0, 1))
        t1 = None if r1 is None else r1.table
        t2 = None if r2 is None else r2.table
        if t1 == t2:
            pencil = r1 if r1 is not None else PENCIL_MARKER
            coeffs = c1
            break
        warnings.append(f"pencil samples disagreed on attempt {attempt}")
    else:
        raise GenericityFailure("pencil term unstable across samples")
    if pencil == PENCIL_MARKER:
        warnings.append("pencil term left symbolic: isolation could not be certified")
    table = _resolved_table(terms, pencil)
    euler = table_euler(table) if table is not None and spec.integral_domain else None
    extras = {"deltas_hat": deltas, "pencil_coefficients": coeffs}
    return StalkReport("general", tuple(terms), pencil, table, euler, extras, tuple(warnings))


@dataclass(frozen=True)
class BradenRecord:
    all_deltas_zero: bool
    c0_preserved: bool
    deltas: dict


def braden_conic_check(spec: StratifiedComplexSpec, f: Polynomial, seed=0) -> BradenRecord:
    """For linear f on a conic stratification every delta vanishes and c_0 is unchanged."""
    f = f.in_ring(spec.variables)
    if f.total_degree() != 1 or f.constant_term() != 0:
        raise ValueError(f"{f} is not a linear form")
    rep = stalk_generic_linear(spec, f, seed)
    deltas = rep.extras["deltas"]
    zero = all(d == 0 for d in deltas.values())
    preserved = rep.extras.get("c0") == rep.extras.get("c0_phi_f")
    return BradenRecord(zero, preserved, deltas)


@dataclass(frozen=True)
class DiscriminantRecord:
    delta_hat_total: int
    downstairs_total: int
    agree: bool
    images: tuple = ()


def _fresh(variables, stem):
    name = stem
    while name in variables:
        name += "_"
    return name


def _image_branch(comp: PrimaryComponent, f: Polynomial, g: Polynomial) -> Polynomial:
    """Irreducible plane curve in (v, u) traced by (g, f) along the component."""
    variables = comp.variables
    v_name, u_name = _fresh(variables, "v"), _fresh(variables, "u")
    ring = variables + (v_name, u_name)
    v = Polynomial.var(v_name, ring)
    u = Polynomial.var(u_name, ring)
    gens = [q.in_ring(ring) for q in comp.primary.generators]
    gens += [v - g.in_ring(ring), u - f.in_ring(ring)]
    n = len(variables)
    E = eliminate(Ideal(gens, ring), [n, n + 1])
    h = gcd_rational(list(E.generators))
    factors = [p for p, _ in factor_rational(h) if p.constant_term() == 0]
    if len(factors) != 1:
        raise DegreeMismatch(f"image of component {comp} is not a single branch")
    plane = ("v", "u")
    return Polynomial({e[n:]: c for e, c in factors[0].terms.items()}, plane)


def discriminant_check(spec: StratifiedComplexSpec, f: Polynomial, g: Polynomial, seed=0) -> DiscriminantRecord:
    """Compare delta-hat with the same count pushed down to the (g, f) plane."""
    f = f.in_ring(spec.variables)
    g = g.in_ring(spec.variables)
    hyp = check_hypothesis(spec, f, g)
    if not hyp.ok:
        raise HypothesisViolated(hyp)
    upstairs = 0
    downstairs = 0
    images = []
    for s in relevant_strata(spec, f):
        upstairs += delta_hat(s.geometry, f, g).total
        for b in polar_cycle(s.geometry, f, g).hat:
            comp = b.component
            n_f = component_intersection_number(comp, f)
            n_g = component_intersection_number(comp, g)
            P = _image_branch(comp, f, g)
            plane = P.variables
            branch = PrimaryComponent(Ideal([P], plane), Ideal([P], plane))
            a = component_intersection_number(branch, Polynomial.var("u", plane))
            if n_f % a:
                raise DegreeMismatch(f"{n_f} is not a multiple of the image multiplicity {a}")
            k = n_f // a
            if not branch.prime.contains(Polynomial.var("v", plane)):
                b_ = component_intersection_number(branch, Polynomial.var("v", plane))
                if n_g != k * b_:
                    raise DegreeMismatch(f"push-forward degree {k} inconsistent with n_g = {n_g}")
            downstairs += k * delta_P(branch)
            images.append((s.name, comp.label(), P.to_str(), k))
    return DiscriminantRecord(upstairs, downstairs, upstairs == downstairs, tuple(images))
