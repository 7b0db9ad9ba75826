"""Seed patterns over exact Laurent polynomials, with Poisson data.

Cluster variables are always stored as Laurent polynomials in the initial
(root) cluster.  Decomposition with respect to a non-root seed re-expresses
the element in that seed's own variables first, by mutating back along the
reversed trail and substituting.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .compatible import CompatiblePair, build_pair, mutate_pair
from .errors import NotPointed, VertexFrozen
from .icequiver import IceQuiver
from .laurent import LaurentPoly, exact_divide, substitute, tropical_eval
from .matrices import IntMatrix


@dataclass(frozen=True)
class LambdaSeed:
    order: tuple  # vertex ids, unfrozen first
    cluster: tuple  # of LaurentPoly in the root variables
    pair: CompatiblePair
    bhat: IntMatrix
    trail: tuple  # vertex ids mutated from the root

    def __post_init__(self):
        object.__setattr__(self, "_decomp_cache", {})
        object.__setattr__(self, "_solver", None)

    @property
    def m(self):
        return len(self.order)

    @property
    def n(self):
        return self.pair.n

    def index_of(self, vid) -> int:
        return self.order.index(vid)

    def variable(self, vid) -> LaurentPoly:
        return self.cluster[self.index_of(vid)]

    def to_json(self):
        return {
            "order": [list(v) if isinstance(v, tuple) else v for v in self.order],
            "cluster": [x.to_json() for x in self.cluster],
            "trail": [list(v) if isinstance(v, tuple) else v for v in self.trail],
            "btilde": self.pair.btilde.to_json(),
            "lambda": self.pair.lam.to_json(),
            "bhat": self.bhat.to_json(),
            "d": self.pair.d,
        }


def seed_from_quiver(iq: IceQuiver, order=None) -> LambdaSeed:
    pair, bhat = build_pair(iq, order)
    if order is None:
        order = iq.default_order()
    m = len(order)
    cluster = tuple(LaurentPoly.variable(m, i) for i in range(m))
    return LambdaSeed(tuple(order), cluster, pair, bhat, ())


def seed_from_pair(order, pair: CompatiblePair, bhat: IntMatrix) -> LambdaSeed:
    m = len(order)
    cluster = tuple(LaurentPoly.variable(m, i) for i in range(m))
    return LambdaSeed(tuple(order), cluster, pair, bhat, ())


def mutate_seed(s: LambdaSeed, vid) -> LambdaSeed:
    """Exchange at the unfrozen vertex vid; frozen exponents stay >= 0."""
    v = s.index_of(vid)
    if v >= s.n:
        raise VertexFrozen(f"vertex {vid!r} indexes a frozen variable")
    m = s.m
    pos = LaurentPoly.one(m)
    neg = LaurentPoly.one(m)
    for j in range(m):
        b = s.bhat[j, v]
        if b > 0:
            pos = pos * s.cluster[j].pow(b)
        elif b < 0:
            neg = neg * s.cluster[j].pow(-b)
    new_var = exact_divide(pos + neg, s.cluster[v])
    for e in new_var.terms:
        assert all(e[j] >= 0 for j in range(s.n, m)), "frozen variable inverted"
    pair2, bhat2 = mutate_pair(s.pair, s.bhat, v)
    cluster2 = tuple(new_var if j == v else x for j, x in enumerate(s.cluster))
    return LambdaSeed(s.order, cluster2, pair2, bhat2, s.trail + (vid,))


def mutate_along(s: LambdaSeed, vids) -> LambdaSeed:
    for v in vids:
        s = mutate_seed(s, v)
    return s


@dataclass(frozen=True)
class PointedDecomposition:
    g: tuple  # in Z^m
    f: LaurentPoly  # polynomial in y_1..y_n, constant term 1


class _ColumnSolver:
    """Exact solver for btilde * v = h with btilde of full column rank."""

    def __init__(self, btilde: IntMatrix):
        self.bt = btilde
        m, n = btilde.rows, btilde.cols
        # row-reduce [btilde | I_m] over Q to find n pivot rows
        a = [[Fraction(btilde[i, j]) for j in range(n)] for i in range(m)]
        pivots = []
        used = set()
        for col in range(n):
            piv = next(
                (r for r in range(m) if r not in used and a[r][col] != 0),
                None,
            )
            assert piv is not None, "btilde does not have full column rank"
            used.add(piv)
            pivots.append(piv)
            inv = 1 / a[piv][col]
            a[piv] = [x * inv for x in a[piv]]
            for r in range(m):
                if r != piv and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[piv])]
        self.pivots = pivots
        sub = [[Fraction(btilde[i, j]) for j in range(n)] for i in pivots]
        # invert the pivot square submatrix
        k = n
        inv = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
        for c in range(k):
            piv = next(r for r in range(c, k) if sub[r][c] != 0)
            sub[c], sub[piv] = sub[piv], sub[c]
            inv[c], inv[piv] = inv[piv], inv[c]
            f = sub[c][c]
            sub[c] = [x / f for x in sub[c]]
            inv[c] = [x / f for x in inv[c]]
            for r in range(k):
                if r != c and sub[r][c] != 0:
                    f = sub[r][c]
                    sub[r] = [x - f * y for x, y in zip(sub[r], sub[c])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[c])]
        self.inv = inv

    def solve(self, h):
        """The unique rational v with bt*v = h, or None if inconsistent."""
        rhs = [Fraction(h[p]) for p in self.pivots]
        v = [sum(row[j] * rhs[j] for j in range(len(rhs))) for row in self.inv]
        for i in range(self.bt.rows):
            if sum(self.bt[i, j] * v[j] for j in range(self.bt.cols)) != h[i]:
                return None
        return v


def decompose(u: LaurentPoly, s: LambdaSeed) -> PointedDecomposition:
    """Pointed decomposition u = x^g * F(yhat) with respect to seed s.

    u must be given in the root variables; for a non-root seed it is first
    rewritten in s's own cluster via back-mutation.  Results are memoized
    on the seed.
    """
    cache = s._decomp_cache
    hit = cache.get(u)
    if hit is not None:
        return hit
    dec = _decompose_fresh(u, s)
    cache[u] = dec
    return dec


def _decompose_fresh(u: LaurentPoly, s: LambdaSeed) -> PointedDecomposition:
    if s.trail:
        u = to_seed_coordinates(u, s)
    if u.is_zero():
        raise NotPointed("zero is not pointed")
    if s._solver is None:
        object.__setattr__(s, "_solver", _ColumnSolver(s.pair.btilde))
    solver = s._solver
    support = sorted(u.terms, key=lambda e: (sum(e), e))
    for g in support:
        if u.terms[g] != 1:
            continue
        vs = {}
        ok = True
        for h in support:
            diff = tuple(a - b for a, b in zip(h, g))
            v = solver.solve(diff)
            if v is None or any(x.denominator != 1 or x < 0 for x in v):
                ok = False
                break
            vs[h] = tuple(int(x) for x in v)
        if ok:
            f = LaurentPoly(s.n, {vs[h]: u.terms[h] for h in support})
            return PointedDecomposition(g, f)
    raise NotPointed("no valid base exponent found")


def reconstruct(dec: PointedDecomposition, s: LambdaSeed) -> LaurentPoly:
    """Expand x^g * F(yhat) back into a Laurent polynomial in s's variables."""
    out = {}
    for v, c in dec.f.terms.items():
        shift = s.pair.btilde.mul_vec(v)
        e = tuple(a + b for a, b in zip(dec.g, shift))
        out[e] = out.get(e, 0) + c
    return LaurentPoly(s.m, out)


@lru_cache(maxsize=256)
def back_expressions(s: LambdaSeed):
    """Root cluster variables written in seed s's own variables.

    Obtained by re-rooting the pattern at s and mutating along the reversed
    trail; mutation in a fixed direction is an involution, so the walk ends
    at the root seed.
    """
    fresh = seed_from_pair(s.order, s.pair, s.bhat)
    back = mutate_along(fresh, reversed(s.trail))
    return back.cluster


def to_seed_coordinates(u: LaurentPoly, s: LambdaSeed) -> LaurentPoly:
    """Rewrite u (in root variables) as a Laurent polynomial in s's cluster."""
    return substitute(u, list(back_expressions(s)))


def s_row(pair: CompatiblePair, g) -> tuple:
    """(S | 0) g: the type scalar times the unfrozen part of g."""
    return tuple(pair.d * g[i] for i in range(pair.n))


def tropical_invariant(u: LaurentPoly, u2: LaurentPoly, s: LambdaSeed) -> int:
    """Tropical pairing <u, u2> of two cluster monomials, computed in seed s:
    the skew form on base exponents plus the tropical term."""
    du, du2 = decompose(u, s), decompose(u2, s)
    quad = 0
    for i, gi in enumerate(du.g):
        if gi:
            for j, gj in enumerate(du2.g):
                if gj:
                    quad += gi * s.pair.lam[i, j] * gj
    return quad + tropical_eval(du.f, s_row(s.pair, du2.g))


def f_invariant(u: LaurentPoly, u2: LaurentPoly, s: LambdaSeed) -> int:
    """Symmetrized invariant (u || u2)_F; checks both defining formulas."""
    du, du2 = decompose(u, s), decompose(u2, s)
    direct = tropical_eval(du.f, s_row(s.pair, du2.g)) + tropical_eval(
        du2.f, s_row(s.pair, du.g)
    )
    via_sum = tropical_invariant(u, u2, s) + tropical_invariant(u2, u, s)
    assert direct == via_sum, "F-invariant: the two defining formulas disagree"
    assert direct >= 0, "F-invariant must be non-negative"
    return direct
