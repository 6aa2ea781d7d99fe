"""Primary components of curve germs at the origin and their intersection numbers.

Plane curves split by factoring the gcd of the generators.  Space curves
(three variables) are split through a projection to a coordinate plane:
the eliminant is factored over Q, each factor is isolated by saturating
away its cofactor, and the split is accepted only if the component lengths
against a generic hyperplane add up to the length of the whole ideal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from ._sym import factor_rational, gcd_rational, squarefree_part
from .errors import NonProperIntersection, NotACurve
from .ideals import (
    Ideal,
    eliminate,
    elimination_order,
    groebner,
    local_dimension,
    local_quotient_dim,
    maximal_ideal,
    saturate,
    vanishes_on_component,
)
from .poly import Polynomial, random_linear_form
from .puiseux import ord_along, puiseux_branches


@dataclass(frozen=True, eq=False)
class PrimaryComponent:
    """A one-dimensional primary component through the origin.

    ``primary`` carries the multiplicity; ``prime`` is its radical.
    """

    prime: Ideal
    primary: Ideal
    dimension: int = 1

    @property
    def variables(self):
        return self.prime.variables

    def __str__(self):
        return str(self.prime)

    def label(self):
        return ", ".join(g.to_str() for g in groebner(self.prime).basis)


def _sort_key(comp):
    return comp.label()


def decompose_curve_at_origin(I):
    """One-dimensional primary components of I passing through the origin.

    Embedded and isolated zero-dimensional components are discarded, as are
    components missing the origin.
    """
    n = I.nvars
    if n not in (2, 3):
        raise ValueError(f"curve decomposition supports 2 or 3 variables, not {n}")
    d = local_dimension(I)
    if d != 1:
        raise NotACurve(d)
    comps = _decompose_plane(I) if n == 2 else _decompose_space(I)
    return sorted(comps, key=_sort_key)


def _decompose_plane(I):
    h = gcd_rational(list(I.generators))
    out = []
    for p, k in factor_rational(h):
        if p.constant_term() != 0:
            continue
        out.append(PrimaryComponent(Ideal([p], I.variables), Ideal([p**k], I.variables)))
    return out


def _linear_change(matrix, variables):
    """Substitution x_i -> sum_j M_ij x_j as a mapping for Polynomial.subs."""
    n = len(variables)
    mapping = {}
    for i in range(n):
        terms = {tuple(int(k == j) for k in range(n)): Fraction(matrix[i][j]) for j in range(n) if matrix[i][j]}
        mapping[i] = Polynomial(terms, variables)
    return mapping


def _inverse(matrix):
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _transform(I, matrix):
    mp = _linear_change(matrix, I.variables)
    return Ideal([g.subs(mp) for g in I.generators], I.variables)


def _coordinate_changes(n, seed=0):
    for perm in permutations(range(n)):
        yield [[int(perm[i] == j) for j in range(n)] for i in range(n)]
    rng = random.Random(f"projection:{seed}")
    while True:
        m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        if det:
            yield m


_MAX_PROJECTIONS = 12


def _decompose_space(I):
    variables = I.variables
    Isat = saturate(I, maximal_ideal(variables))
    probe = random_linear_form("decompose-probe", variables)
    total = local_quotient_dim(Isat + probe)
    for attempt, M in enumerate(_coordinate_changes(3)):
        if attempt >= _MAX_PROJECTIONS:
            break
        J = _transform(Isat, M)
        comps = _split_by_projection(J)
        if comps is None:
            continue
        back = _inverse(M)
        comps = [
            PrimaryComponent(_reduced(_transform(c.prime, back)), _reduced(_transform(c.primary, back)))
            for c in comps
        ]
        if sum(local_quotient_dim(c.primary + probe) for c in comps) == total:
            return comps
    raise ArithmeticError("no projection separated the curve components")


def _reduced(I):
    return Ideal(groebner(I).basis, I.variables)


def _split_by_projection(J):
    variables = J.variables
    E = eliminate(J, [0, 1])
    if E.is_zero():
        return None
    e = gcd_rational(list(E.generators))
    if e.is_constant():
        return None
    comps = []
    for p, k in factor_rational(e):
        if p.constant_term() != 0:
            continue
        cof = e / (p**k)
        Q = J if cof.is_constant() else saturate(J, Ideal([cof], variables))
        Q = _drop_far(Q)
        if not Q.in_origin() or local_dimension(Q) != 1:
            continue
        P = curve_prime(Q)
        if P is None:
            return None
        comps.append(PrimaryComponent(P, Q))
    return comps


def _drop_far(Q):
    """Remove components of Q that miss the origin, seen through plane eliminants."""
    n = Q.nvars
    changed = True
    while changed:
        changed = False
        for keep in ((i, j) for i in range(n) for j in range(i + 1, n)):
            E = eliminate(Q, list(keep))
            if E.is_zero():
                continue
            far = [p for p, _ in factor_rational(gcd_rational(list(E.generators))) if p.constant_term() != 0]
            if far:
                s = far[0]
                for p in far[1:]:
                    s = s * p
                Q = _reduced(saturate(Q, Ideal([s], Q.variables)))
                changed = True
    return Q


def curve_prime(Q):
    """Radical of a one-dimensional primary ideal in three variables.

    A coordinate t transcendental on the curve is chosen; squarefree parts of
    the plane eliminants make the extension to Q(t)[others] radical, and the
    contraction is recovered by saturating with the leading coefficients.
    """
    n = Q.nvars
    for t in range(n):
        if not eliminate(Q, [t]).is_zero():
            continue
        others = [i for i in range(n) if i != t]
        extra = []
        for v in others:
            E = eliminate(Q, sorted([t, v]))
            if E.is_zero():
                break
            extra.append(squarefree_part(gcd_rational(list(E.generators))))
        else:
            J = Ideal(list(Q.generators) + extra, Q.variables)
            order = elimination_order(n, others)
            s = Polynomial.constant(1, Q.variables)
            for g in groebner(J, order).basis:
                lm = g.leading_monomial(order)
                lc = Polynomial(
                    {
                        tuple(0 if i in others else a for i, a in enumerate(e)): c
                        for e, c in g.terms.items()
                        if all(e[i] == lm[i] for i in others)
                    },
                    Q.variables,
                )
                if not lc.is_constant():
                    s = s * lc
            if s.is_constant():
                return Ideal(groebner(J).basis, Q.variables)
            return Ideal(groebner(saturate(J, Ideal([s], Q.variables))).basis, Q.variables)
    return None


def component_intersection_number(comp, h):
    """(C . V(h)) at the origin for the cycle carried by ``comp.primary``."""
    if vanishes_on_component(h, comp.prime):
        raise NonProperIntersection(f"{h} vanishes on the component {comp}")
    return local_quotient_dim(comp.primary + h)


def puiseux_intersection_number(comp, h):
    """Independent route for plane components: sum of t-orders over Puiseux branches."""
    if comp.prime.nvars != 2 or len(comp.primary.generators) != 1:
        raise ValueError("Puiseux oracle needs a principal plane-curve component")
    total = 0
    for b in puiseux_branches(comp.primary.generators[0]):
        total += b.multiplicity * b.conjugates * ord_along(h, b)
    return total
