"""Conversions to sympy for the few tasks delegated to it (factoring, gcd)."""

from fractions import Fraction
from functools import reduce

import sympy

from .poly import Polynomial


def to_sympy(p):
    xs = sympy.symbols(" ".join(p.variables), seq=True)
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, a in zip(xs, e):
            term *= s**a
        expr += term
    return expr, xs


def from_sympy(expr, xs, variables):
    P = sympy.Poly(expr, *xs, domain="QQ")
    return Polynomial({e: to_fraction(c) for e, c in P.terms()}, variables)


def to_fraction(c):
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def factor_rational(p):
    """Irreducible factors over Q with multiplicities, each made primitive."""
    if p.is_constant():
        return []
    expr, xs = to_sympy(p)
    _, facs = sympy.factor_list(expr, *xs)
    out = []
    for f, mult in facs:
        q = from_sympy(f, xs, p.variables)
        if not q.is_constant():
            out.append((q.primitive(), int(mult)))
    out.sort(key=lambda t: (t[0].total_degree(), t[0].to_str()))
    return out


def gcd_rational(polys):
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of nothing")
    variables = polys[0].variables
    exprs = []
    for p in polys:
        e, xs = to_sympy(p)
        exprs.append(e)
    g = reduce(lambda a, b: sympy.gcd(a, b), exprs)
    return from_sympy(g, xs, variables).primitive()


def squarefree_part(p):
    out = Polynomial.constant(1, p.variables)
    for f, _ in factor_rational(p):
        out = out * f
    return out
