"""Correction numbers built from intersection multiplicities along polar curves."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curves import PrimaryComponent, component_intersection_number
from .errors import GenericityFailure, NonProperIntersection
from .ideals import Ideal, local_quotient_dim
from .poly import Polynomial, jacobian, random_linear_form
from .polar import StratumGeometry, polar_cycle

PLAIN = "plain"
HAT = "hat"
GENERIC_LINEAR = "generic-linear"

GENERICITY_RETRIES = 6


@dataclass(frozen=True)
class ComponentRecord:
    prime: str
    n_f: int
    n_g: int
    contribution: int


@dataclass(frozen=True)
class DeltaReport:
    stratum: str
    mode: str
    components: tuple
    total: int
    linear_form: str | None = None
    retries: int = 0


def _component_records(branches, f, g, hat):
    records = []
    for b in branches:
        n_f = component_intersection_number(b.component, f)
        n_g = component_intersection_number(b.component, g)
        contribution = n_f - min(n_f, n_g) if hat else n_f - n_g
        records.append(ComponentRecord(b.component.label(), n_f, n_g, contribution))
    return tuple(records)


def delta_hat(S: StratumGeometry, f: Polynomial, g: Polynomial) -> DeltaReport:
    """Sum of n_f - min(n_f, n_g) over polar components through 0 not inside V(g)."""
    if not S.contains_origin():
        return DeltaReport(S.name, HAT, (), 0)
    cyc = polar_cycle(S, f, g)
    f = f.in_ring(S.variables)
    g = g.in_ring(S.variables)
    records = _component_records(cyc.hat, f, g, hat=True)
    return DeltaReport(S.name, HAT, records, sum(r.contribution for r in records))


def delta_plain(S: StratumGeometry, f: Polynomial, g: Polynomial) -> DeltaReport:
    """(Gamma . V(f)) - (Gamma . V(g)) over all polar components through the origin."""
    if not S.contains_origin():
        return DeltaReport(S.name, PLAIN, (), 0)
    cyc = polar_cycle(S, f, g)
    f = f.in_ring(S.variables)
    g = g.in_ring(S.variables)
    through = [b for b in cyc.branches if b.through_origin]
    records = _component_records(through, f, g, hat=False)
    return DeltaReport(S.name, PLAIN, records, sum(r.contribution for r in records))


def delta_generic_linear(S: StratumGeometry, f: Polynomial, seed) -> DeltaReport:
    """Plain delta against a sampled linear form, confirmed by a second independent sample."""
    for attempt in range(GENERICITY_RETRIES):
        try:
            reports = []
            for k in (0, 1):
                ell = random_linear_form(f"{seed}/{attempt}/{k}", S.variables)
                rep = delta_plain(S, f, ell)
                reports.append((rep, ell))
        except NonProperIntersection:
            continue
        (first, ell), (second, _) = reports
        if first.total == second.total:
            return DeltaReport(
                S.name, GENERIC_LINEAR, first.components, first.total, ell.to_str(), attempt
            )
    raise GenericityFailure(
        f"generic-linear delta on stratum {S.name} unstable over {GENERICITY_RETRIES} sample pairs"
    )


def delta_P(component: PrimaryComponent) -> int:
    """Plane-branch correction in the (v, u) plane; the v = 0 axis contributes 0."""
    P = component.prime
    if P.nvars != 2:
        raise ValueError("delta_P needs a component in the (v, u) plane")
    v = Polynomial.var(P.variables[0], P.variables)
    u = Polynomial.var(P.variables[1], P.variables)
    if P.contains(u):
        raise NonProperIntersection(f"component {component} is the u = 0 axis")
    if P.contains(v):
        return 0
    a = local_quotient_dim(P + u)
    b = local_quotient_dim(P + v)
    return a - min(a, b)


def milnor_number(f: Polynomial):
    """Local length of the Jacobian quotient at the origin (inf if not isolated)."""
    return local_quotient_dim(Ideal(jacobian([f])[0], f.variables))


def _restrict_to_hyperplane(f: Polynomial, ell: Polynomial) -> Polynomial:
    """f on {ell = 0}, solving ell for its last variable."""
    n = f.nvars
    last = n - 1
    a = ell.terms[tuple(int(i == last) for i in range(n))]
    rest = f.variables[:last]
    solved = Polynomial(
        {tuple(e[:last]): -c / a for e, c in ell.terms.items() if e[last] == 0}, rest
    )
    mapping = {i: Polynomial.var(f.variables[i], rest) for i in range(last)}
    mapping[last] = solved
    return f.subs(mapping, rest)


@dataclass(frozen=True)
class TeissierRecord:
    gamma_dot_f: int
    mu_ambient: int
    mu_slice: int
    holds: bool


def teissier_check(f: Polynomial, seed) -> TeissierRecord:
    """Compare (Gamma . V(f)) for a generic polar with mu(f) + mu(f restricted to a hyperplane)."""
    mu = milnor_number(f)
    if mu == math.inf:
        raise ValueError(f"{f} does not have an isolated singularity at the origin")
    dense = StratumGeometry("ambient", f.variables)
    for attempt in range(GENERICITY_RETRIES):
        values = []
        try:
            for k in (0, 1):
                ell = random_linear_form(f"{seed}/{attempt}/{k}", f.variables)
                rep = delta_plain(dense, f, ell)
                gamma_f = sum(r.n_f for r in rep.components)
                values.append((gamma_f, milnor_number(_restrict_to_hyperplane(f, ell))))
        except NonProperIntersection:
            continue
        if values[0] == values[1]:
            gamma_f, mu_slice = values[0]
            return TeissierRecord(gamma_f, mu, mu_slice, gamma_f == mu + mu_slice)
    raise GenericityFailure(f"Teissier comparison for {f} unstable over {GENERICITY_RETRIES} sample pairs")
