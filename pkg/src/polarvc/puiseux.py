"""Newton–Puiseux parametrisations of plane curve branches at the origin.

Branches are computed as rational Puiseux expansions: every parametrisation
``x = c t^e``, ``y = sum_k a_k t^k`` lives over a number field L, and stands
for ``[L:Q]`` conjugate analytic branches which all meet any rational curve
with the same multiplicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import numberfield as nf
from .errors import PrecisionExhausted
from ._sym import factor_rational
from .poly import Polynomial

INFINITY = math.inf
MAX_PRECISION = 1024
_DEFAULT_PRECISION = 12


def _bezout(q, m):
    """Integers (u, v) with u*q - v*m = 1 (q, m coprime)."""
    g, x, y = _egcd(q, m)
    assert g == 1
    return x, -y


def _egcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def _lower_edges(G):
    """Edges of the Newton polygon giving roots with positive valuation.

    Returns (edges, j_last) where each edge is (q, m, l, j_low) and j_last
    is the y-order of the last vertex (multiplicity of the root Y = 0).
    """
    pts = {}
    for (i, j) in G:
        if j not in pts or i < pts[j]:
            pts[j] = i
    j0 = min(j for j, i in pts.items() if i == 0)
    A = (0, j0)
    edges = []
    while True:
        lower = [(i, j) for j, i in pts.items() if j < A[1]]
        if not lower:
            break
        best = None
        for (i, j) in lower:
            r = Fraction(i - A[0], A[1] - j)
            if best is None or r < best[0] or (r == best[0] and j < best[1][1]):
                best = (r, (i, j))
        r, B = best
        m, q = r.numerator, r.denominator
        l = q * A[0] + m * A[1]
        edges.append((q, m, l, B[1]))
        A = B
    return edges, A[1]


def _edge_polynomial(G, q, m, l, j_low, K):
    deg = 0
    coeffs = {}
    for (i, j), c in G.items():
        if q * i + m * j == l:
            k = (j - j_low) // q
            coeffs[k] = c
            deg = max(deg, k)
    return nf.utrim([coeffs.get(k, K.zero) for k in range(deg + 1)])


def _substitute(G, cx, q, m, cy, l):
    """G(cx X^q, X^m (cy + Y)) / X^l as a bivariate dict."""
    out = {}
    for (i, j), c in G.items():
        base = c * cx**i
        xe = q * i + m * j - l
        for k in range(j + 1):
            v = base * comb(j, k) * cy ** (j - k)
            if v:
                key = (xe, k)
                s = out.get(key)
                s = v if s is None else s + v
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    return out


def _series_mul(a, b, prec):
    K = (a or b)[0].K
    out = [K.zero] * prec
    for i, x in enumerate(a[:prec]):
        if not x:
            continue
        for j, y in enumerate(b[: prec - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _eval_bivariate(G, xpoly, yser, prec):
    """G(X, Y(X)) truncated below X^prec; xpoly unused (X itself)."""
    K = yser[0].K
    out = [K.zero] * prec
    ypows = [[K.one] + [K.zero] * (prec - 1)]
    maxj = max(j for _, j in G)
    for _ in range(maxj):
        ypows.append(_series_mul(ypows[-1], yser, prec))
    for (i, j), c in G.items():
        if i >= prec:
            continue
        yp = ypows[j]
        for k in range(prec - i):
            if yp[k]:
                out[i + k] = out[i + k] + c * yp[k]
    return out


def _smooth_root(G, K, prec):
    """Power-series root Y(X) with Y(0) = 0 of G, assuming G_Y(0,0) != 0."""
    dY = G.get((0, 1))
    if not dY:
        raise ArithmeticError("root is not smooth")
    inv = dY.inverse()
    Y = [K.zero] * prec
    for k in range(1, prec):
        val = _eval_bivariate(G, None, Y, k + 1)[k]
        Y[k] = -val * inv
    return Y


@dataclass(eq=False)
class PuiseuxBranch:
    """One rational Puiseux expansion ``x = x_coeff t^e``, ``y = y(t)``.

    ``conjugates`` is the number of analytic branches over the algebraic
    closure represented by this expansion.  ``multiplicity`` is inherited
    from the power of ``curve`` in the input polynomial.
    """

    curve: Polynomial
    field: nf.NumberField
    x_coeff: nf.Elt
    ramification: int
    multiplicity: int
    _chain: tuple = ()
    _final: dict | None = None
    _vertical: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def conjugates(self):
        return self.field.degree

    def y_series(self, prec=_DEFAULT_PRECISION):
        """Coefficients of y(t) for t^0 .. t^(prec-1)."""
        if prec in self._cache:
            return self._cache[prec]
        K = self.field
        if self._vertical:
            ys = [K.zero, K.one] + [K.zero] * max(prec - 2, 0)
            ys = ys[:prec]
        else:
            if self._final is None:
                Y = [K.zero] * prec
            else:
                Y = _smooth_root(self._final, K, prec)
            xc, xe = K.one, 1
            for cx, q, m, cy in reversed(self._chain):
                shift = xe * m
                scale = xc**m
                newY = [K.zero] * prec
                for k in range(prec):
                    src = (cy if k == 0 else K.zero) + (Y[k] if k < len(Y) else K.zero)
                    if k + shift < prec and src:
                        newY[k + shift] = src * scale
                Y = newY
                xc, xe = cx * xc**q, xe * q
            ys = Y
        self._cache[prec] = ys
        return ys

    def describe(self, prec=6):
        ys = self.y_series(prec)
        y = " + ".join(f"{c!r}*t^{k}" for k, c in enumerate(ys) if c) or "0"
        x = "0" if self._vertical else f"{self.x_coeff!r}*t^{self.ramification}"
        return f"({x}, {y} + O(t^{prec}))"


def _expand(G, K, chain, curve, mult, out):
    edges, j_last = _lower_edges(G)
    if j_last > 0:
        if j_last > 1:
            raise ArithmeticError("repeated root in a squarefree expansion")
        out.append(PuiseuxBranch(curve, K, *_x_of(chain, K), mult, tuple(chain), None))
    for q, m, l, j_low in edges:
        phi = _edge_polynomial(G, q, m, l, j_low, K)
        for psi, r in nf.factor(phi):
            if len(psi) == 2:
                L, emb, xi = K, (lambda v: v), -psi[0]
            else:
                L, emb, xi = nf.extend(K, psi)
            G_L = {k: emb(c) for k, c in G.items()}
            chain_L = [(emb(a), qq, mm, emb(b)) for a, qq, mm, b in chain]
            u, v = _bezout(q, m)
            cx, cy = xi**v, xi**u
            G1 = _substitute(G_L, cx, q, m, cy, l)
            step = chain_L + [(cx, q, m, cy)]
            if r == 1:
                out.append(PuiseuxBranch(curve, L, *_x_of(step, L), mult, tuple(step), G1))
            else:
                _expand(G1, L, step, curve, mult, out)


def _x_of(chain, K):
    xc, xe = K.one, 1
    for cx, q, _, _ in reversed(chain):
        xc, xe = cx * xc**q, xe * q
    return xc, xe


def puiseux_branches(plane_curve):
    """All branches at the origin of a plane curve (variables: x first, y second)."""
    if plane_curve.nvars != 2:
        raise ValueError("puiseux_branches needs a polynomial in exactly two variables")
    if plane_curve.is_zero() or plane_curve.constant_term() != 0:
        raise ValueError("curve must be nonzero and pass through the origin")
    K = nf.RATIONALS
    out = []
    for F, mult in factor_rational(plane_curve):
        if F.constant_term() != 0:
            continue
        if F.support() == {0}:
            # the line x = 0
            out.append(PuiseuxBranch(F, K, K.zero, 1, mult, _vertical=True))
            continue
        G = {e: K(c) for e, c in F.terms.items()}
        _expand(G, K, [], F, mult, out)
    return out


def ord_along(p, branch, max_precision=MAX_PRECISION):
    """t-order of ``p`` restricted to the branch; INFINITY when p vanishes on it."""
    if p.variables != branch.curve.variables:
        p = p.in_ring(branch.curve.variables)
    if p.is_zero():
        return INFINITY
    _, rem = p.divmod(branch.curve)
    if rem.is_zero():
        return INFINITY
    prec = _DEFAULT_PRECISION
    while prec <= max_precision:
        ys = branch.y_series(prec)
        val = _compose(p, branch, ys, prec)
        for k, c in enumerate(val):
            if c:
                return k
        prec *= 2
    raise PrecisionExhausted(f"order of {p} along branch not certified below t^{max_precision}")


def _compose(p, branch, ys, prec):
    K = branch.field
    out = [K.zero] * prec
    xe = 0 if branch._vertical else branch.ramification
    ypows = {0: [K.one] + [K.zero] * (prec - 1)}
    maxj = p.degree_in(1)
    for j in range(1, maxj + 1):
        ypows[j] = _series_mul(ypows[j - 1], ys, prec)
    for (i, j), c in p.terms.items():
        if branch._vertical:
            if i:
                continue
            coeff = K(c)
            shift = 0
        else:
            coeff = K(c) * branch.x_coeff**i
            shift = xe * i
        if shift >= prec:
            continue
        yp = ypows[j]
        for k in range(prec - shift):
            if yp[k]:
                out[k + shift] = out[k + shift] + coeff * yp[k]
    return out
