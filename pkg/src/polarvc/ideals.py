"""Gröbner bases, local standard bases and the ideal operations built on them.

Global bases come from a Buchberger loop over monic rational polynomials.
Local standard bases are global bases of the homogenised ideal for an order
that favours the homogenising variable; Mora's weak normal form reduces
against them.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .errors import ResourceLimit, RingMismatch
from .poly import DEGREVLEX, LOCAL, MonomialOrder, Polynomial, elimination_order

DEFAULT_BUDGET = 10**7
_budget = contextvars.ContextVar("polarvc_step_budget", default=DEFAULT_BUDGET)


@contextlib.contextmanager
def step_budget(steps):
    """Limit the reduction work (term updates weighted by coefficient size) of one basis computation."""
    token = _budget.set(int(steps))
    try:
        yield
    finally:
        _budget.reset(token)


class _Counter:
    __slots__ = ("left", "limit")

    def __init__(self):
        self.limit = self.left = _budget.get()

    def tick(self, work=1):
        self.left -= work
        if self.left < 0:
            raise ResourceLimit(f"reduction step budget of {self.limit} exhausted")


# -- integer coefficient kernels ---------------------------------------------


def _strip(p):
    if not p:
        return p
    g = 0
    for c in p.values():
        g = math.gcd(g, c)
        if g == 1:
            return p
    return {e: c // g for e, c in p.items()}


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub_scaled(h, fa, fb, shift, g):
    """h := fa*h - fb * x^shift * g (in place, returns h)."""
    if fa != 1:
        for e in h:
            h[e] *= fa
    for e, c in g.items():
        k = tuple(a + b for a, b in zip(e, shift))
        v = h.get(k, 0) - fb * c
        if v:
            h[k] = v
        else:
            h.pop(k, None)
    return h


def _factors(a, b):
    d = math.gcd(a, b)
    return a // d, b // d


def _spoly(f, lf, g, lg):
    m = tuple(max(a, b) for a, b in zip(lf, lg))
    sf = tuple(a - b for a, b in zip(m, lf))
    sg = tuple(a - b for a, b in zip(m, lg))
    fa, fb = _factors(g[lg], f[lf])
    h = {tuple(a + b for a, b in zip(e, sf)): c * fa for e, c in f.items()}
    return _strip(_sub_scaled(h, 1, fb, sg, g))


def _ecart(p, lm):
    return max(sum(e) for e in p) - sum(lm)


def _mora_nf(h, basis, key, counter):
    """Mora's weak normal form with écart-minimising reducer selection."""
    T = [(lm, _ecart(g, lm), g) for lm, g in basis]
    h = dict(h)
    while h:
        m = max(h, key=key)
        best = None
        for t in T:
            if _divides(t[0], m) and (best is None or t[1] < best[1]):
                best = t
        if best is None:
            return _strip(h)
        counter.tick()
        eh = _ecart(h, m)
        if best[1] > eh:
            T.append((m, eh, dict(h)))
        lm, _, g = best
        fa, fb = _factors(g[lm], h[m])
        shift = tuple(a - b for a, b in zip(m, lm))
        h = _strip(_sub_scaled(h, fa, fb, shift, g))
        h.pop(m, None)
    return h


# -- rational kernel for global orders --------------------------------------------


def _to_rational(p):
    return {e: Fraction(c) for e, c in p.terms.items()}


def _make_monic(p, key):
    lm = max(p, key=key)
    c = p[lm]
    if c != 1:
        p = {e: v / c for e, v in p.items()}
    return lm, p


def _reduce_rational(h, reducers, key, counter):
    """Full reduction of ``h`` by monic ``reducers`` (list of (lm, poly)); result is monic."""
    h = dict(h)
    r = {}
    while h:
        m = max(h, key=key)
        for lm, g in reducers:
            if _divides(lm, m):
                break
        else:
            r[m] = h.pop(m)
            continue
        c = h[m]
        # work is the number of term updates weighted by coefficient size
        counter.tick(len(g) * (1 + (c.numerator.bit_length() + c.denominator.bit_length()) // 256))
        shift = tuple(a - b for a, b in zip(m, lm))
        for e, v in g.items():
            k = tuple(a + b for a, b in zip(e, shift))
            nv = h.get(k, 0) - c * v
            if nv:
                h[k] = nv
            else:
                h.pop(k, None)
        h.pop(m, None)
    if not r:
        return r
    return _make_monic(r, key)[1]


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _disjoint(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _spoly_monic(fi, li, fj, lj):
    l = _lcm(li, lj)
    si = tuple(a - b for a, b in zip(l, li))
    sj = tuple(a - b for a, b in zip(l, lj))
    s = {tuple(a + b for a, b in zip(e, si)): v for e, v in fi.items()}
    for e, v in fj.items():
        k = tuple(a + b for a, b in zip(e, sj))
        nv = s.get(k, 0) - v
        if nv:
            s[k] = nv
        else:
            s.pop(k, None)
    return s


def _buchberger(polys, key, counter):
    """Buchberger with Gebauer-Moeller pair updates and sugar selection.

    Returns a minimal basis as a list of (lm, monic poly).
    """
    store = []  # (lm, poly, sugar)
    active = []
    pairs = {}  # (i, j) -> (sugar, key(lcm), lcm)

    def update(h):
        nonlocal active, pairs
        lh = store[h][0]
        cands = [(g, _lcm(lh, store[g][0])) for g in active]
        kept = []
        for idx, (g, l) in enumerate(cands):
            if _disjoint(lh, store[g][0]):
                kept.append((g, l))
                continue
            rest = cands[idx + 1 :] + kept
            if any(_divides(l2, l) and l2 != l for _, l2 in rest):
                continue
            if any(l2 == l for g2, l2 in kept if not _disjoint(lh, store[g2][0])):
                continue
            kept.append((g, l))
        new_pairs = {}
        for g, l in kept:
            if _disjoint(lh, store[g][0]):
                continue
            sg = max(store[g][2] + sum(l) - sum(store[g][0]), store[h][2] + sum(l) - sum(lh))
            new_pairs[(g, h)] = (sg, key(l), l)
        pairs = {
            (a, b): v
            for (a, b), v in pairs.items()
            if not (
                _divides(lh, v[2])
                and _lcm(store[a][0], lh) != v[2]
                and _lcm(store[b][0], lh) != v[2]
            )
        }
        pairs.update(new_pairs)
        active = [g for g in active if not _divides(lh, store[g][0])] + [h]

    def add(p, sugar):
        lm, p = _make_monic(p, key)
        store.append((lm, p, sugar))
        update(len(store) - 1)

    def reducers():
        # smallest leading monomial first keeps coefficient growth down
        return sorted(((store[g][0], store[g][1]) for g in active), key=lambda t: key(t[0]))

    for f in sorted(polys, key=lambda p: key(max(p, key=key))):
        if not f:
            continue
        r = _reduce_rational(f, reducers(), key, counter)
        if r:
            add(r, max(sum(e) for e in f))
    while pairs:
        (i, j), (sugar, _, _) = min(pairs.items(), key=lambda kv: kv[1][1])
        del pairs[(i, j)]
        s = _spoly_monic(store[i][1], store[i][0], store[j][1], store[j][0])
        if not s:
            continue
        r = _reduce_rational(s, reducers(), key, counter)
        if r:
            add(r, sugar)
    return sorted(((store[g][0], store[g][1]) for g in active), key=lambda t: key(t[0]))


def _to_ints(p):
    return p.integer_terms()


def _to_poly(d, variables):
    return Polynomial._raw({e: Fraction(c) for e, c in d.items()}, variables)


# -- public types ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Ideal:
    """Ideal of a polynomial ring given by generators.

    Equality (:meth:`equals`) is decided through reduced Gröbner bases,
    never by comparing generator lists.
    """

    generators: tuple
    variables: tuple

    def __init__(self, generators, variables=None):
        gens = [g for g in generators if not g.is_zero()]
        if variables is None:
            if not generators:
                raise ValueError("cannot infer the ring of an empty ideal")
            variables = generators[0].variables
        variables = tuple(variables)
        for g in gens:
            if g.variables != variables:
                raise RingMismatch(f"{g.variables} vs {variables}")
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "variables", variables)

    @property
    def nvars(self):
        return len(self.variables)

    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = Ideal([other], self.variables)
        if other.variables != self.variables:
            raise RingMismatch(f"{self.variables} vs {other.variables}")
        return Ideal(self.generators + other.generators, self.variables)

    def __mul__(self, other):
        return Ideal([a * b for a in self.generators for b in other.generators], self.variables)

    def is_zero(self):
        return not self.generators

    def equals(self, other):
        return groebner(self).basis == groebner(other).basis

    def contains(self, p):
        if p.is_zero():
            return True
        return normal_form(p, groebner(self)).is_zero()

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.generators)

    def in_origin(self):
        """True iff every generator vanishes at the origin."""
        return all(g.constant_term() == 0 for g in self.generators)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class BasisResult:
    ideal: Ideal
    order: MonomialOrder
    basis: tuple
    staircase: tuple = field(default=())

    @property
    def variables(self):
        return self.ideal.variables


_cache = {}
_cache_lock = threading.Lock()


def _cached(kind, I, order, compute):
    key = (kind, I.variables, frozenset(g for g in I.generators), order)
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None:
        return hit
    res = compute()
    with _cache_lock:
        if len(_cache) > 4096:
            _cache.clear()
        _cache[key] = res
    return res


def cached_bases():
    """Snapshot of every basis computed so far in this process (bounded cache)."""
    with _cache_lock:
        return list(_cache.values())


def groebner(I, order=DEGREVLEX):
    """Reduced Gröbner basis of ``I`` for a global monomial order."""
    if order.is_local:
        raise ValueError("groebner() needs a global order; use standard_basis_local")
    return _cached("gb", I, order, lambda: _groebner(I, order))


def _groebner(I, order):
    key = lru_cache(maxsize=None)(order.key)
    counter = _Counter()
    polys = [_to_rational(g) for g in I.generators]
    basis = _buchberger(polys, key, counter)
    reduced = []
    for i, (lm, g) in enumerate(basis):
        others = [t for j, t in enumerate(basis) if j != i]
        r = _reduce_rational(g, others, key, counter)
        reduced.append(Polynomial._raw(r, I.variables))
    reduced.sort(key=lambda p: key(p.leading_monomial(order)))
    stair = tuple(p.leading_monomial(order) for p in reduced)
    return BasisResult(I, order, tuple(reduced), stair)


def standard_basis_local(I):
    """Standard basis for the local degree-reverse-lexicographic order."""
    return _cached("sb", I, LOCAL, lambda: _standard_basis(I))


def _standard_basis(I):
    # Homogenise with a leading variable t; a global basis for an order that
    # prefers high powers of t dehomogenises to a local standard basis.
    key = lru_cache(maxsize=None)(LOCAL.key)
    counter = _Counter()

    @lru_cache(maxsize=None)
    def hkey(e):
        return (sum(e), e[0], key(e[1:]))

    polys = []
    for g in I.generators:
        if g.is_zero():
            continue
        d = g.total_degree()
        polys.append({(d - sum(e),) + e: Fraction(c) for e, c in g.terms.items()})
    basis = _buchberger(polys, hkey, counter)
    local = []
    for _, g in basis:
        h = {e[1:]: c for e, c in g.items()}
        local.append((max(h, key=key), h))
    minimal = []
    for lm, g in sorted(local, key=lambda t: (sum(t[0]), key(t[0]))):
        if not any(_divides(l2, lm) for l2, _ in minimal):
            minimal.append((lm, g))
    out = tuple(Polynomial._raw(g, I.variables).monic(LOCAL) for _, g in minimal)
    return BasisResult(I, LOCAL, out, tuple(lm for lm, _ in minimal))


def normal_form(p, result):
    """Normal form of ``p`` against a basis (weak normal form for local orders)."""
    key = result.order.key
    if p.is_zero():
        return p
    counter = _Counter()
    if result.order.is_local:
        basis = [(g.leading_monomial(result.order), _to_ints(g)) for g in result.basis]
        r = _mora_nf(_to_ints(p), basis, key, counter)
        return _to_poly(r, p.variables)
    basis = [(g.leading_monomial(result.order), _to_rational(g)) for g in result.basis]
    r = _reduce_rational(_to_rational(p), basis, key, counter)
    return Polynomial._raw(r, p.variables)


def spolys_reduce_to_zero(result):
    """Buchberger's criterion: every S-polynomial of the basis reduces to 0."""
    key = result.order.key
    counter = _Counter()
    if result.order.is_local:
        basis = [(g.leading_monomial(result.order), _to_ints(g)) for g in result.basis]
        for (li, gi), (lj, gj) in combinations(basis, 2):
            s = _spoly(gi, li, gj, lj)
            if s and _mora_nf(s, basis, key, counter):
                return False
        return True
    basis = [_make_monic(_to_rational(g), key) for g in result.basis]
    for (li, gi), (lj, gj) in combinations(basis, 2):
        if _disjoint(li, lj):
            continue
        s = _spoly_monic(gi, li, gj, lj)
        if s and _reduce_rational(s, basis, key, counter):
            return False
    return True


# -- monomial ideal combinatorics ----------------------------------------------


def _monomial_dimension(stair, n):
    if any(not any(e) for e in stair):
        return -math.inf
    best = 0
    for size in range(n, 0, -1):
        for S in combinations(range(n), size):
            if not any(all(e[i] == 0 or i in S for i in range(n)) for e in stair):
                return size
    return best


def _count_standard_monomials(stair, n):
    if any(not any(e) for e in stair):
        return 0
    bounds = []
    for i in range(n):
        pure = [e[i] for e in stair if e[i] and all(e[j] == 0 for j in range(n) if j != i)]
        if not pure:
            return math.inf
        bounds.append(min(pure))
    count = 0
    for m in product(*(range(b) for b in bounds)):
        if not any(_divides(e, m) for e in stair):
            count += 1
    return count


def local_quotient_dim(I):
    """dim over Q of the local ring at the origin modulo ``I`` (``math.inf`` if infinite)."""
    if I.is_zero():
        return math.inf
    sb = standard_basis_local(I)
    return _count_standard_monomials(sb.staircase, I.nvars)


def local_dimension(I):
    """Krull dimension of the germ of V(I) at the origin; ``-inf`` for the empty germ."""
    if I.is_zero():
        return I.nvars
    return _monomial_dimension(standard_basis_local(I).staircase, I.nvars)


def dimension(I):
    """Global affine dimension of V(I); ``-inf`` for the unit ideal."""
    if I.is_zero():
        return I.nvars
    return _monomial_dimension(groebner(I).staircase, I.nvars)


# -- ideal operations -----------------------------------------------------------


def _fresh_name(variables, stem="_t"):
    name = stem
    while name in variables:
        name += "_"
    return name


def eliminate(I, keep):
    """I ∩ Q[keep], returned as an ideal of the same ring."""
    keep = [I.variables.index(v) if isinstance(v, str) else v for v in keep]
    drop = [i for i in range(I.nvars) if i not in keep]
    if not drop:
        return I
    order = elimination_order(I.nvars, drop)
    gb = groebner(I, order)
    gens = [g for g in gb.basis if all(g.degree_in(i) <= 0 for i in drop)]
    return Ideal(gens, I.variables)


def intersect(I, J):
    if I.variables != J.variables:
        raise RingMismatch(f"{I.variables} vs {J.variables}")
    if I.is_zero() or J.is_zero():
        return Ideal([], I.variables)
    t = _fresh_name(I.variables)
    ring = I.variables + (t,)
    tv = Polynomial.var(t, ring)
    gens = [tv * g.in_ring(ring) for g in I.generators]
    gens += [(1 - tv) * g.in_ring(ring) for g in J.generators]
    E = eliminate(Ideal(gens, ring), list(range(I.nvars)))
    back = [Polynomial._raw({e[:-1]: c for e, c in g.terms.items()}, I.variables) for g in E.generators]
    return Ideal(back, I.variables)


def quotient_by_element(I, h):
    if h.is_zero():
        return Ideal([Polynomial.constant(1, I.variables)], I.variables)
    K = intersect(I, Ideal([h], I.variables))
    return Ideal([g / h for g in K.generators], I.variables)


def quotient(I, J):
    """Ideal quotient I : J."""
    parts = [quotient_by_element(I, h) for h in J.generators]
    if not parts:
        return Ideal([Polynomial.constant(1, I.variables)], I.variables)
    out = parts[0]
    for P in parts[1:]:
        out = intersect(out, P)
    return Ideal(groebner(out).basis, I.variables)


def saturate(I, J):
    """I : J^∞, computed as the intersection of the saturations by each generator of J."""
    if I.variables != J.variables:
        raise RingMismatch(f"{I.variables} vs {J.variables}")
    parts = [_saturate_by_element(I, h) for h in J.generators if not h.is_zero()]
    if not parts:
        return Ideal(groebner(I).basis, I.variables)
    out = parts[0]
    for P in parts[1:]:
        out = intersect(out, P)
    return Ideal(groebner(out).basis, I.variables)


def _saturate_by_element(I, h):
    # I : h^∞ = (I + (1 - t h)) ∩ Q[x]
    if h.is_constant():
        return Ideal(groebner(I).basis, I.variables)
    t = _fresh_name(I.variables)
    ring = (t,) + I.variables
    tv = Polynomial.var(t, ring)
    gens = [g.in_ring(ring) for g in I.generators] + [1 - tv * h.in_ring(ring)]
    E = eliminate(Ideal(gens, ring), list(range(1, len(ring))))
    back = [Polynomial._raw({e[1:]: c for e, c in g.terms.items()}, I.variables) for g in E.generators]
    return Ideal(groebner(Ideal(back, I.variables)).basis, I.variables)


def vanishes_on_component(h, P):
    """h ∈ P for a prime ideal P (normal form test)."""
    if h.is_zero():
        return True
    return normal_form(h, groebner(P)).is_zero()


def maximal_ideal(variables):
    return Ideal([Polynomial.var(v, variables) for v in variables], variables)
