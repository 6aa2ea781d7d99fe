"""Exact multivariate polynomials over the rationals.

Polynomials are immutable sparse maps from exponent tuples to
:class:`fractions.Fraction` coefficients, tied to an ordered tuple of
variable names.  Mixing polynomials from different rings is an error.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .errors import ParseError, RingMismatch, UnknownVariable

Exponent = tuple


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on exponent tuples.

    ``kind`` is one of ``lex``, ``degrevlex``, ``local-degrevlex`` or
    ``elim``.  ``perm`` lists variable indices from most to least significant
    (identity when omitted).  ``nelim`` is the size of the leading block of
    an ``elim`` order; within each block degrevlex is used.
    """

    kind: str = "degrevlex"
    perm: tuple | None = None
    nelim: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "local-degrevlex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    @property
    def is_local(self):
        return self.kind == "local-degrevlex"

    def key(self, e):
        p = self.perm
        if p is not None:
            e = tuple(e[i] for i in p)
        k = self.kind
        if k == "lex":
            return e
        if k == "degrevlex":
            return (sum(e), tuple(-a for a in reversed(e)))
        if k == "local-degrevlex":
            return (-sum(e), tuple(-a for a in reversed(e)))
        a, b = e[: self.nelim], e[self.nelim :]
        return (sum(a), tuple(-x for x in reversed(a)), sum(b), tuple(-x for x in reversed(b)))


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")
LOCAL = MonomialOrder("local-degrevlex")


def elimination_order(nvars, eliminate):
    """Block order making the variables at indices ``eliminate`` largest."""
    eliminate = sorted(set(eliminate))
    rest = [i for i in range(nvars) if i not in eliminate]
    return MonomialOrder("elim", tuple(eliminate + rest), len(eliminate))


def _coerce(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class Polynomial:
    """Immutable polynomial with rational coefficients."""

    __slots__ = ("terms", "variables", "_hash")

    def __init__(self, terms, variables):
        variables = tuple(variables)
        n = len(variables)
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(e)
            if len(e) != n or any(a < 0 for a in e):
                raise ValueError(f"bad exponent {e} for ring {variables}")
            c = _coerce(c)
            if c:
                clean[e] = c
        self.terms = clean
        self.variables = variables
        self._hash = None

    @classmethod
    def _raw(cls, terms, variables):
        p = object.__new__(cls)
        p.terms = terms
        p.variables = variables
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, variables):
        variables = tuple(variables)
        c = _coerce(c)
        return cls._raw({(0,) * len(variables): c} if c else {}, variables)

    @classmethod
    def var(cls, name, variables):
        variables = tuple(variables)
        i = variables.index(name) if isinstance(name, str) else name
        e = [0] * len(variables)
        e[i] = 1
        return cls._raw({tuple(e): Fraction(1)}, variables)

    @classmethod
    def monomial(cls, exps, variables, coeff=1):
        return cls._raw({tuple(exps): _coerce(coeff)}, tuple(variables))

    # -- basic queries -----------------------------------------------------

    @property
    def nvars(self):
        return len(self.variables)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self):
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def low_degree(self):
        """Order at the origin (lowest total degree); -1 for zero."""
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def support(self):
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def leading_monomial(self, order=DEGREVLEX):
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order=DEGREVLEX):
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order=DEGREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.variables)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.variables != self.variables:
            raise RingMismatch(f"{self.variables} vs {other.variables}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return Polynomial._raw(t, self.variables)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self.terms.items()}, self.variables)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial._raw({}, self.variables)
            return Polynomial._raw({e: c * other for e, c in self.terms.items()}, self.variables)
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Polynomial._raw({e: c for e, c in t.items() if c}, self.variables)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, Polynomial) and other.is_constant() and not other.is_zero():
            return self * (1 / other.constant_term())
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other, order=LEX):
        """Multivariate division by a single polynomial (global order)."""
        other = self._check(other)
        lm = other.leading_monomial(order)
        lc = other.terms[lm]
        q, r, p = {}, {}, dict(self.terms)
        while p:
            m = max(p, key=order.key)
            c = p[m]
            if all(a >= b for a, b in zip(m, lm)):
                s = tuple(a - b for a, b in zip(m, lm))
                f = c / lc
                q[s] = q.get(s, 0) + f
                for e, d in other.terms.items():
                    k = tuple(a + b for a, b in zip(e, s))
                    v = p.get(k, 0) - f * d
                    if v:
                        p[k] = v
                    else:
                        p.pop(k, None)
            else:
                r[m] = c
                del p[m]
        return Polynomial(q, self.variables), Polynomial(r, self.variables)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.variables)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution ------------------------------------------

    def diff(self, i):
        if isinstance(i, str):
            i = self.variables.index(i)
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                k = e[:i] + (e[i] - 1,) + e[i + 1 :]
                t[k] = c * e[i]
        return Polynomial._raw(t, self.variables)

    def subs(self, mapping, variables=None):
        """Substitute polynomials for variables.

        ``mapping`` sends variable indices or names to polynomials in the
        target ring ``variables`` (default: own ring).  Unmapped variables
        must exist by name in the target ring.
        """
        target = tuple(variables) if variables is not None else self.variables
        images = []
        for i, name in enumerate(self.variables):
            img = mapping.get(i, mapping.get(name))
            if img is None:
                img = Polynomial.var(name, target)
            elif isinstance(img, (int, Fraction)):
                img = Polynomial.constant(img, target)
            images.append(img)
        powers = [dict() for _ in images]

        def pw(i, k):
            if k not in powers[i]:
                powers[i][k] = images[i] ** k
            return powers[i][k]

        out = Polynomial._raw({}, target)
        for e, c in self.terms.items():
            term = Polynomial.constant(c, target)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            out = out + term
        return out

    def in_ring(self, variables):
        """The same polynomial viewed in a ring with (a superset of) these variables."""
        variables = tuple(variables)
        idx = []
        for name in self.variables:
            if name not in variables:
                raise RingMismatch(f"variable {name} missing from {variables}")
            idx.append(variables.index(name))
        t = {}
        for e, c in self.terms.items():
            k = [0] * len(variables)
            for i, a in zip(idx, e):
                k[i] = a
            t[tuple(k)] = c
        return Polynomial._raw(t, variables)

    def evaluate(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, a in zip(point, e):
                v *= Fraction(x) ** a
            total += v
        return total

    # -- normalisation helpers ----------------------------------------------

    def integer_terms(self):
        """Primitive integer coefficient map with positive leading content sign."""
        if not self.terms:
            return {}
        den = reduce(lcm, (c.denominator for c in self.terms.values()), 1)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = reduce(gcd, ints.values())
        return {e: c // g for e, c in ints.items()}

    def primitive(self):
        return Polynomial._raw({e: Fraction(c) for e, c in self.integer_terms().items()}, self.variables)

    def monic(self, order=DEGREVLEX):
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    # -- printing --------------------------------------------------------------

    def to_str(self, order=DEGREVLEX):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                v if a == 1 else f"{v}^{a}" for v, a in zip(self.variables, e) if a
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r}, {list(self.variables)})"


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.variables = tuple(variables)
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            q = self.unary()
            if tok[1] == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("division only by nonzero constants", self.text, tok[2])
                p = p * (1 / q.constant_term())
        return p

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("exponent must be a non-negative integer literal", tok)
            base = base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return Polynomial.constant(val, self.variables)
        if kind == "name":
            if val not in self.variables:
                raise UnknownVariable(val, self.text, pos)
            return Polynomial.var(val, self.variables)
        if tok[:2] == ("op", "("):
            p = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("expected ')'")
            self.take()
            return p
        self.fail("unexpected " + ("end of input" if kind == "end" else repr(val)), tok)


def parse(text, variables):
    """Parse ``text`` into a canonical :class:`Polynomial` over ``variables``.

    >>> str(parse("(x+y)*(x-y)", ["x", "y"]))
    'x^2 - y^2'
    """
    return _Parser(text, variables).parse()


def random_linear_form(seed, variables):
    """Deterministic linear form with nonzero integer coefficients in [-1000, 1000].

    ``variables`` is a tuple of names or a count (names ``x1..xn``).
    """
    if isinstance(variables, int):
        if variables < 1:
            raise ValueError("need at least one variable")
        variables = tuple(f"x{i + 1}" for i in range(variables))
    variables = tuple(variables)
    rng = random.Random(f"linear-form:{seed}")
    coeffs = []
    for _ in variables:
        a = 0
        while a == 0:
            a = rng.randint(-1000, 1000)
        coeffs.append(a)
    n = len(variables)
    return Polynomial(
        {tuple(int(i == j) for j in range(n)): a for i, a in enumerate(coeffs)}, variables
    )


def partial_derivative(p, var):
    """Derivative with respect to a variable given by index or name."""
    if isinstance(var, str):
        if var not in p.variables:
            raise UnknownVariable(var)
        var = p.variables.index(var)
    return p.diff(var)


def jacobian(polys, variables=None):
    """Rows of partial derivatives."""
    return [[p.diff(i) for i in range(p.nvars)] for p in polys]


def determinant(rows):
    """Determinant of a small square matrix of polynomials (Laplace expansion)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] * 0
    return total


def maximal_minors(rows, size):
    """All ``size`` x ``size`` minors of the matrix ``rows`` (nonzero ones only)."""
    from itertools import combinations

    out = []
    nrows, ncols = len(rows), len(rows[0]) if rows else 0
    if size > min(nrows, ncols) or size <= 0:
        return out
    for rs in combinations(range(nrows), size):
        for cs in combinations(range(ncols), size):
            m = determinant([[rows[r][c] for c in cs] for r in rs])
            if not m.is_zero():
                out.append(m)
    return out
