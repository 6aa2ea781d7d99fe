"""Exact arithmetic in simple algebraic extensions Q(a) = Q[z]/(m(z)).

Fields are grown on demand: :func:`extend` adjoins a root of a polynomial
that is irreducible over the current field and re-expresses everything over
a single primitive element, so every field in play is a simple extension of
Q given by one minimal polynomial.

Univariate polynomials over a field are plain lists of :class:`Elt`,
lowest degree first.  Resultants and factorisation over Q are delegated to
sympy; factorisation over extensions uses Trager's norm method on top.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

_z, _a = sympy.symbols("_z _a")


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qdivmod(a, b):
    a = _trim(a)
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        f = a[-1] / lb
        s = len(a) - len(b)
        q[s] = f
        for i, c in enumerate(b):
            a[s + i] -= f * c
        a = _trim(a)
    return q, a


class NumberField:
    """Q[z]/(minpoly) for a monic irreducible minpoly (coefficient list, low first)."""

    def __init__(self, minpoly):
        m = [Fraction(c) for c in _trim(minpoly)]
        lead = m[-1]
        self.minpoly = [c / lead for c in m]
        self.degree = len(self.minpoly) - 1
        if self.degree < 1:
            raise ValueError("minimal polynomial must have positive degree")

    def __repr__(self):
        return f"NumberField({self.minpoly_expr()})"

    def minpoly_expr(self, symbol="a"):
        s = sympy.Symbol(symbol)
        return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * s**i for i, c in enumerate(self.minpoly)))

    def __call__(self, value):
        if isinstance(value, Elt):
            if value.K is not self:
                raise ValueError("element of a different field")
            return value
        return Elt(self, [Fraction(value)])

    @property
    def zero(self):
        return Elt(self, [])

    @property
    def one(self):
        return Elt(self, [Fraction(1)])

    @property
    def gen(self):
        if self.degree == 1:
            return Elt(self, [-self.minpoly[0]])
        return Elt(self, [Fraction(0), Fraction(1)])

    def reduce(self, coeffs):
        c = _trim(coeffs)
        if len(c) <= self.degree:
            return c
        _, r = _qdivmod(c, self.minpoly)
        return r


RATIONALS = NumberField([0, 1])


class Elt:
    """Element of a :class:`NumberField`, stored as a reduced coefficient list."""

    __slots__ = ("K", "c")

    def __init__(self, K, coeffs):
        self.K = K
        self.c = K.reduce(coeffs)

    def _lift(self, other):
        if isinstance(other, Elt):
            if other.K is not self.K:
                raise ValueError("mixing elements of different fields")
            return other
        return Elt(self.K, [Fraction(other)])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.c), len(other.c))
        a = self.c + [0] * (n - len(self.c))
        b = other.c + [0] * (n - len(other.c))
        return Elt(self.K, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Elt(self.K, [-x for x in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        return Elt(self.K, _qmul(self.c, other.c))

    __rmul__ = __mul__

    def inverse(self):
        if not self.c:
            raise ZeroDivisionError("inverse of zero in a number field")
        # extended Euclid: find s with s*c = 1 mod minpoly
        r0, r1 = list(self.K.minpoly), list(self.c)
        s0, s1 = [], [Fraction(1)]
        while len(_trim(r1)) > 1:
            q, r = _qdivmod(r0, r1)
            qs = _qmul(q, s1)
            n = max(len(s0), len(qs))
            s2 = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)]
            r0, r1, s0, s1 = r1, r, s1, _trim(s2)
        r1 = _trim(r1)
        if not r1:
            raise ZeroDivisionError("element is a zero divisor; minimal polynomial not irreducible")
        return Elt(self.K, [x / r1[0] for x in s1])

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.K.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Elt(self.K, [Fraction(other)])
        if not isinstance(other, Elt):
            return NotImplemented
        return self.K is other.K and self.c == other.c

    def __hash__(self):
        return hash(tuple(self.c))

    def __bool__(self):
        return bool(self.c)

    def is_rational(self):
        return len(self.c) <= 1

    def rational(self):
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.c[0] if self.c else Fraction(0)

    def __repr__(self):
        if self.is_rational():
            return str(self.rational())
        terms = []
        for i, x in enumerate(self.c):
            if x:
                terms.append(f"{x}" if i == 0 else f"{x}*a" + (f"^{i}" if i > 1 else ""))
        return "(" + " + ".join(terms) + ")"


# -- univariate polynomials over a field ----------------------------------------


def utrim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def umul(a, b):
    if not a or not b:
        return []
    K = a[0].K
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return utrim(out)


def uadd(a, b):
    n = max(len(a), len(b))
    K = (a or b)[0].K
    return utrim([(a[i] if i < len(a) else K.zero) + (b[i] if i < len(b) else K.zero) for i in range(n)])


def uscale(a, c):
    return utrim([x * c for x in a])


def udivmod(a, b):
    a = utrim(a)
    b = utrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    K = b[0].K
    inv = b[-1].inverse()
    q = [K.zero] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        f = a[-1] * inv
        s = len(a) - len(b)
        q[s] = f
        for i, c in enumerate(b):
            a[s + i] = a[s + i] - f * c
        a = utrim(a)
    return utrim(q), a


def umonic(a):
    a = utrim(a)
    return uscale(a, a[-1].inverse()) if a else a


def ugcd(a, b):
    a, b = utrim(a), utrim(b)
    while b:
        _, r = udivmod(a, b)
        a, b = b, r
    return umonic(a)


def udiff(a):
    return utrim([a[i] * i for i in range(1, len(a))])


def ucompose_linear(p, shift):
    """p(z + shift) for a field element ``shift`` (Horner)."""
    K = p[0].K if p else shift.K
    out = []
    lin = [shift, K.one]
    for c in reversed(p):
        out = uadd(umul(out, lin), [c])
    return out


def squarefree_decomposition(p):
    """Yun's algorithm: list of (factor, multiplicity) with monic squarefree factors."""
    p = umonic(p)
    out = []
    g = ugcd(p, udiff(p))
    w, _ = udivmod(p, g)
    i = 1
    while len(w) > 1:
        y = ugcd(w, g)
        z, _ = udivmod(w, y)
        if len(z) > 1:
            out.append((umonic(z), i))
        g, _ = udivmod(g, y)
        w = y
        i += 1
    return out


# -- norms, factoring, extension ---------------------------------------------------


def _elt_expr(x, sym):
    return sum(sympy.Rational(c.numerator, c.denominator) * sym**i for i, c in enumerate(x.c))


def _from_sympy_poly(expr, K):
    P = sympy.Poly(expr, _z, domain="QQ")
    coeffs = list(reversed(P.all_coeffs()))
    return utrim([K(Fraction(int(c.p), int(c.q))) for c in coeffs])


def _norm(p, shift):
    """Res_a(m(a), p(z - shift*a, a)) as a sympy polynomial in z over QQ."""
    K = p[0].K
    m = K.minpoly_expr("_a")
    expr = sum(_elt_expr(c, _a) * (_z - shift * _a) ** i for i, c in enumerate(p))
    if K.degree == 1:
        return sympy.Poly(expr.subs(_a, -K.minpoly[0]), _z, domain="QQ")
    return sympy.Poly(sympy.resultant(m, sympy.expand(expr), _a), _z, domain="QQ")


def _shifts():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def factor_squarefree(p):
    """Monic irreducible factors over K of a squarefree polynomial (Trager)."""
    p = umonic(p)
    if len(p) <= 2:
        return [p]
    K = p[0].K
    for s in _shifts():
        N = _norm(p, s)
        if sympy.degree(sympy.gcd(N, N.diff(_z))) == 0:
            break
    _, facs = N.factor_list()
    out = []
    alpha = K.gen if K.degree > 1 else K.zero
    for F, _ in facs:
        Fk = _from_sympy_poly(F.as_expr(), K)
        g = ugcd(p, ucompose_linear(Fk, alpha * s))
        if len(g) > 1:
            out.append(g)
    return out


def factor(p):
    """Irreducible factorisation over K: list of (monic factor, multiplicity)."""
    out = []
    for part, mult in squarefree_decomposition(p):
        for f in factor_squarefree(part):
            out.append((f, mult))
    return out


def extend(K, psi):
    """Adjoin a root of ``psi`` (irreducible over K, degree >= 2).

    Returns ``(L, embed, root)`` where ``embed`` maps elements of K into L
    and ``root`` is the adjoined root as an element of L.
    """
    psi = umonic(psi)
    for k in _shifts():
        N = _norm(psi, k)
        if sympy.degree(sympy.gcd(N, N.diff(_z))) == 0:
            break
    coeffs = list(reversed(N.all_coeffs()))
    L = NumberField([Fraction(int(c.p), int(c.q)) for c in coeffs])
    gamma = L.gen
    if K.degree == 1:
        def embed(x):
            return L(x.rational())
        return L, embed, gamma - 0
    # psi(gamma - k*a) with K's generator replaced by a polynomial variable a over L
    lin = [gamma, L(-k)]
    acc = []
    power = [L.one]
    for c in psi:
        coeff_poly = [L(v) for v in c.c]
        acc = uadd(acc, umul(coeff_poly, power))
        power = umul(power, lin)
    mpoly = [L(v) for v in K.minpoly]
    g = ugcd(acc, mpoly)
    if len(g) != 2:
        raise ArithmeticError("primitive element recovery failed")
    alpha = -g[0] / g[1]

    def embed(x):
        out = L.zero
        for c in reversed(x.c):
            out = out * alpha + c
        return out

    return L, embed, gamma - alpha * k
