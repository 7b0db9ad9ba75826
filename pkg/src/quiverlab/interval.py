"""Interval ice quivers with potential from doubly-infinite repetition words.

A reduced word for the longest element extends to a bi-infinite sequence by
starring every full period.  An integer interval [a, b] of that sequence
carries an ice quiver whose arrows are governed by nearest letter
repetitions, and a potential summing one chordless cycle per non-horizontal
arrow with unfrozen target.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import coxeter as cox
from .coxeter import DynkinDiagram
from .errors import EmptyInterval, MovePreconditionFailed, NoIsoFound, NotAdapted
from .icequiver import Arrow, IceQuiver, Vertex
from .potential import IQP, Potential, mutate_qp, qp_isomorphic


@dataclass(frozen=True)
class ExtendedWord:
    """Accessor for the bi-infinite sequence with i_{s+N} = (i_s)*.

    overrides holds finitely many changed letters (after commutation or
    braid moves); the base periodicity applies outside of them.
    """

    diagram: DynkinDiagram
    base: tuple  # reduced word for w0, positions 1..N
    star: tuple = field(default=None)  # star[i-1] = i*
    overrides: tuple = ()  # sorted ((pos, letter), ...)

    def __post_init__(self):
        if self.star is None:
            wd = cox.weyl_data(self.diagram)
            object.__setattr__(self, "star", tuple(wd.star[i] for i in self.diagram.vertices))
        assert len(self.base) == len(cox.positive_roots(self.diagram)), "base must be a w0 word"
        assert cox.is_reduced(self.diagram, self.base), "base word must be reduced"

    @property
    def period(self) -> int:
        return len(self.base)

    def _star_of(self, i: int) -> int:
        return self.star[i - 1]

    def letter(self, s: int) -> int:
        for pos, let in self.overrides:
            if pos == s:
                return let
        q, r = divmod(s - 1, self.period)
        out = self.base[r]
        if q % 2:
            out = self._star_of(out)
        return out

    def with_overrides(self, changes: dict) -> "ExtendedWord":
        merged = {pos: let for pos, let in self.overrides}
        merged.update(changes)
        return ExtendedWord(
            self.diagram, self.base, self.star, tuple(sorted(merged.items()))
        )

    def s_minus(self, s: int) -> int:
        i = self.letter(s)
        t = s - 1
        guard = s - 2 * self.period - len(self.overrides) * self.period - 2
        while t >= guard:
            if self.letter(t) == i:
                return t
            t -= 1
        raise AssertionError("letter fails to recur; corrupted overrides")

    def s_plus(self, s: int) -> int:
        i = self.letter(s)
        t = s + 1
        guard = s + 2 * self.period + len(self.overrides) * self.period + 2
        while t <= guard:
            if self.letter(t) == i:
                return t
            t += 1
        raise AssertionError("letter fails to recur; corrupted overrides")


def s_minus_plus(w: ExtendedWord, s: int):
    return w.s_minus(s), w.s_plus(s)


def apply_move(w: ExtendedWord, kind: str, s: int) -> ExtendedWord:
    changes = cox.apply_move(w.letter, kind, s, w.diagram.adjacent)
    return w.with_overrides(changes)


def arrow_label(s: int, t: int) -> str:
    return f"a[{s}>{t}]"


@dataclass(frozen=True)
class IntervalIQP:
    word: ExtendedWord
    a: int
    b: int
    iqp: IQP

    @property
    def quiver(self) -> IceQuiver:
        return self.iqp.quiver

    @property
    def potential(self) -> Potential:
        return self.iqp.potential

    def row_of(self, s: int) -> int:
        return self.word.letter(s)

    def rows(self) -> dict:
        """Row index -> vertices of that row, ascending."""
        out = {}
        for s in range(self.a, self.b + 1):
            out.setdefault(self.word.letter(s), []).append(s)
        return out


def _has_arrow(w: ExtendedWord, a: int, s: int, t: int) -> bool:
    """Arrow s -> t inside [a, ...]: conditions (1)-(3) of the construction."""
    if s == t:
        return False
    i_s, i_t = w.letter(s), w.letter(t)
    if t == w.s_minus(s):
        return True
    if not w.diagram.adjacent(i_s, i_t):
        return False
    sm, tm = w.s_minus(s), w.s_minus(t)
    if sm < tm < s < t:
        return True
    if s < t and sm < a and tm < a:
        return True
    return False


def _arrow_frozen(w: ExtendedWord, a: int, s: int, t: int) -> bool:
    return (
        s < t
        and w.diagram.adjacent(w.letter(s), w.letter(t))
        and w.s_minus(s) < a
        and w.s_minus(t) < a
    )


def build_interval(w: ExtendedWord, a: int, b: int) -> IntervalIQP:
    """The interval ice quiver with potential on vertex set [a, b]."""
    if a > b:
        raise EmptyInterval(f"[{a}, {b}] is empty")
    frozen = {s for s in range(a, b + 1) if w.s_minus(s) < a}
    verts = tuple(Vertex(s, s in frozen) for s in range(a, b + 1))
    arrows = []
    for s in range(a, b + 1):
        for t in range(a, b + 1):
            if _has_arrow(w, a, s, t):
                arrows.append(Arrow(arrow_label(s, t), s, t, _arrow_frozen(w, a, s, t)))
    quiver = IceQuiver(verts, tuple(sorted(arrows, key=lambda x: (x.src, x.dst))))

    # one chordless cycle per arrow s -> t with s < t and t unfrozen,
    # closing through the horizontal chain t, t^-, t^--, ...
    terms = []
    for ar in quiver.arrows:
        s, t = ar.src, ar.dst
        if not (s < t) or t in frozen:
            continue
        chain = [t]
        closed = None
        cur = t
        while True:
            nxt = w.s_minus(cur)
            if nxt < a:
                break
            chain.append(nxt)
            cur = nxt
            if cur < s and quiver.arrows_between(cur, s):
                closed = cur
                break
        assert closed is not None, f"no closing arrow for cycle at {s}->{t}"
        labels = [arrow_label(s, t)]
        for u, v in zip(chain, chain[1:]):
            labels.append(arrow_label(u, v))
        labels.append(arrow_label(closed, s))
        terms.append((1, labels))
    return IntervalIQP(w, a, b, IQP(quiver, Potential.of(quiver, terms)))


# --- height functions along the window -------------------------------------


def find_height_function(w: ExtendedWord):
    """A height function xi with base adapted to Q_xi, or None."""
    d = w.diagram
    for xi in cox.all_height_functions(d):
        if cox.is_source_sequence(d, xi, w.base):
            return xi
    return None


def height_at(w: ExtendedWord, xi: dict, b: int) -> dict:
    """Right-edge height function xi^(b), from xi = xi^(0) by reflections.

    Moving the edge up past position s reflects at the source i_s; moving
    down past s reflects back at the sink i_s.
    """
    if w.overrides:
        raise NotAdapted("height functions require an unmodified repetition word")
    d = w.diagram
    cur = dict(xi)
    if b >= 1:
        for s in range(1, b + 1):
            cur = cox.reflect_height(d, cur, w.letter(s))
    else:
        for s in range(0, b, -1):
            cur = cox.reflect_height(d, cur, w.letter(s), down=True)
    return cur


def hl_coordinates(interval: IntervalIQP, xi: dict) -> dict:
    """Vertex s -> (row, height): the repetition-quiver coordinates.

    xi is the height function the base word is adapted to (anchored at
    position 0); the c-th vertex from the right of row i lands at
    (i, xi_b(i) - 2c) for the right-edge heights xi_b.  The map is verified
    to be a quiver isomorphism onto a window of the half-infinite
    translation quiver; failure raises NotAdapted.
    """
    w = interval.word
    d = w.diagram
    if not cox.is_source_sequence(d, xi, w.base):
        raise NotAdapted("word is not a source sequence for this height function")
    xib = height_at(w, xi, interval.b)
    coords = {}
    rows = interval.rows()
    for i, ss in rows.items():
        for c_from_right, s in enumerate(reversed(ss), start=1):
            coords[s] = (i, xib[i] - 2 * c_from_right)
    # verify: arrows match the translation-quiver pattern
    for ar in interval.quiver.arrows:
        (i, p), (j, r) = coords[ar.src], coords[ar.dst]
        ok = (d.adjacent(i, j) and r == p + 1) or (i == j and r == p - 2)
        if not ok:
            raise NotAdapted(f"arrow {ar.label} breaks the (i,p) pattern")
    return coords


@dataclass(frozen=True)
class KRLabel:
    """Row i, length r >= 1, spectral exponent p: the module W^(i)_(r, q^p)."""

    i: int
    r: int
    p: int


def kr_label(v: int, coords: dict, xi_b: dict) -> KRLabel:
    """KR label of the seed module at vertex v: r is maximal with
    p + 2(r-1) < xi_b(i)."""
    i, p = coords[v]
    r = (xi_b[i] - p) // 2
    assert r >= 1 and p + 2 * (r - 1) < xi_b[i] <= p + 2 * r
    return KRLabel(i, r, p)


def dual_label(lab: KRLabel, n: int, star: dict, h: int) -> KRLabel:
    """n-fold left dual on labels: (i, r, p) -> (i*, r, p - h), n times."""
    i, p = lab.i, lab.p
    for _ in range(n):
        i = star[i]
        p -= h
    return KRLabel(i, lab.r, p)


def residue(w: ExtendedWord, a: int, b: int):
    """[a, b]-residue: the element s_{i_{a'}} ... s_{i_b} with a' = a + r*N
    maximal such that a' <= b.  Returns (word, admits_adapted_expression)."""
    if a > b:
        raise EmptyInterval(f"[{a}, {b}] is empty")
    n = w.period
    r = (b - a) // n
    a2 = a + r * n
    word = tuple(w.letter(s) for s in range(a2, b + 1))
    return word, _admits_adapted(w.diagram, word)


def _perm_length(perm) -> int:
    return sum(1 for v in perm.values() if all(x <= 0 for x in v))


def _admits_adapted(d: DynkinDiagram, word) -> bool:
    """Whether the element of `word` admits a reduced expression that is a
    source sequence for some orientation; sources are peeled from the left
    with backtracking, one orientation at a time."""
    target = cox.word_to_perm(d, word)

    def peel(xi, perm, length):
        if length == 0:
            return True
        for i in cox.sources_of(d, xi):
            # peeling s_i off the left drops the length iff s_i * perm is shorter
            new_perm = {r: cox.reflect(d, i, v) for r, v in perm.items()}
            if _perm_length(new_perm) == length - 1:
                if peel(cox.reflect_height(d, xi, i), new_perm, length - 1):
                    return True
        return False

    length = _perm_length(target)
    return any(peel(xi, dict(target), length) for xi in cox.all_height_functions(d))


# --- move verification ------------------------------------------------------


def verify_move(w: ExtendedWord, w2: ExtendedWord, kind: str, s: int, a: int, b: int):
    """Witness for the commutation/braid move lemmas on [a, b].

    commutation: an isomorphism of ice QPs swapping s and s+1.
    braid: an isomorphism from the QP mutation at s+1 of the first interval
    to the second interval, swapping s-1 and s.
    Returns (vertex_map, label_map); raises NoIsoFound.
    """
    if kind == "commutation":
        if not (a <= s < b):
            raise MovePreconditionFailed(f"position {s} incompatible with [{a},{b}]")
        lhs = build_interval(w, a, b).iqp
        rhs = build_interval(w2, a, b).iqp
        vm = {t: t for t in range(a, b + 1)}
        vm[s], vm[s + 1] = s + 1, s
    elif kind == "braid":
        if not (a < s < b):
            raise MovePreconditionFailed(f"position {s} incompatible with [{a},{b}]")
        lhs = mutate_qp(build_interval(w, a, b).iqp, s + 1)
        rhs = build_interval(w2, a, b).iqp
        vm = {t: t for t in range(a, b + 1)}
        vm[s - 1], vm[s] = s, s - 1
    else:
        raise ValueError(f"unknown move kind {kind!r}")
    hit = qp_isomorphic(lhs, rhs, vm)
    if hit is None:
        raise NoIsoFound(f"no QP isomorphism for {kind} move at {s} on [{a},{b}]")
    return hit
