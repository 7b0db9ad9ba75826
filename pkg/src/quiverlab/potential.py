"""Potentials on ice quivers, cyclic derivatives, and QP mutation.

Paths compose left to right: in a word (a, b) the arrow a is traversed
first, so consecutive arrows satisfy dst(a) == src(b).  A cyclic word is
stored in its lexicographically least rotation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import icequiver as icq
from .errors import (
    NonUnitTwoCycleCoefficient,
    RedundantPotentialTerm,
    SubstitutionNotStabilized,
    UnknownArrow,
)
from .icequiver import Arrow, IceQuiver


@dataclass(frozen=True)
class CyclicWord:
    arrows: tuple  # of arrow labels, canonical rotation

    @staticmethod
    def of(labels) -> "CyclicWord":
        labels = tuple(labels)
        assert labels, "cyclic words are nonempty"
        best = min(labels[i:] + labels[:i] for i in range(len(labels)))
        return CyclicWord(best)

    def __len__(self):
        return len(self.arrows)

    def rotations(self):
        n = len(self.arrows)
        return [self.arrows[i:] + self.arrows[:i] for i in range(n)]

    def count(self, label) -> int:
        return sum(1 for a in self.arrows if a == label)


def check_cycle(iq: IceQuiver, word: CyclicWord) -> None:
    labels = word.arrows
    for lab in labels:
        try:
            iq.arrow(lab)
        except KeyError:
            raise UnknownArrow(f"no arrow {lab!r}") from None
    for a, b in zip(labels, labels[1:] + labels[:1]):
        if iq.arrow(a).dst != iq.arrow(b).src:
            raise RedundantPotentialTerm(f"cycle {labels} is not composable")


class Potential:
    """Finite integer combination of cyclic words; zero coefficients dropped."""

    def __init__(self, terms=None):
        self.terms = {}
        for word, coeff in (terms or {}).items():
            if coeff:
                self.terms[word] = self.terms.get(word, 0) + coeff
        self.terms = {w: c for w, c in self.terms.items() if c}

    @staticmethod
    def of(iq: IceQuiver, entries) -> "Potential":
        """entries: iterable of (coeff, [labels]); validates against iq."""
        terms = {}
        for coeff, labels in entries:
            w = CyclicWord.of(labels)
            check_cycle(iq, w)
            if len(w) < 2:
                raise RedundantPotentialTerm("cycles in a potential have length >= 2")
            if len(w) < 3 and any(iq.arrow(l).src == iq.arrow(l).dst for l in w.arrows):
                raise RedundantPotentialTerm("loop-containing terms need length >= 3")
            terms[w] = terms.get(w, 0) + coeff
        return Potential(terms)

    def __eq__(self, other):
        return isinstance(other, Potential) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Potential") -> "Potential":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return Potential(out)

    def scale(self, k: int) -> "Potential":
        return Potential({w: k * c for w, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def max_cycle_len(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def arrows_used(self):
        out = set()
        for w in self.terms:
            out.update(w.arrows)
        return out

    def to_json(self):
        items = sorted(self.terms.items(), key=lambda t: t[0].arrows)
        return [{"coeff": c, "cycle": list(w.arrows)} for w, c in items]

    @staticmethod
    def from_json(data, iq: IceQuiver) -> "Potential":
        return Potential.of(iq, [(t["coeff"], t["cycle"]) for t in data])

    def __repr__(self):
        if not self.terms:
            return "Potential(0)"
        bits = []
        for w, c in sorted(self.terms.items(), key=lambda t: t[0].arrows):
            pre = "+" if c > 0 else "-"
            mag = "" if abs(c) == 1 else str(abs(c))
            bits.append(f"{pre}{mag}{'.'.join(w.arrows)}")
        return "Potential(" + " ".join(bits) + ")"


def cyclic_derivative(p: Potential, alpha: str, iq: IceQuiver):
    """d/d(alpha) of the potential: a list of (coeff, path) with path a tuple
    of labels running dst(alpha) -> src(alpha)."""
    try:
        iq.arrow(alpha)
    except KeyError:
        raise UnknownArrow(f"no arrow {alpha!r}") from None
    out = []
    for w, c in p.terms.items():
        labels = w.arrows
        n = len(labels)
        for i, lab in enumerate(labels):
            if lab == alpha:
                out.append((c, labels[i + 1 :] + labels[:i]))
    out.sort(key=lambda t: t[1])
    return out


def is_irredundant(p: Potential, iq: IceQuiver) -> bool:
    return all(any(not iq.arrow(l).frozen for l in w.arrows) for w in p.terms)


@dataclass(frozen=True)
class IQP:
    """Ice quiver with potential."""

    quiver: IceQuiver
    potential: Potential

    def __post_init__(self):
        for w in self.potential.terms:
            check_cycle(self.quiver, w)


def _rotate_away_from(word: CyclicWord, iq: IceQuiver, v):
    """A rotation whose first arrow does not start at v (exists: no loops at v)."""
    for rot in word.rotations():
        if iq.arrow(rot[0]).src != v:
            return rot
    raise RedundantPotentialTerm(f"every rotation of {word.arrows} begins at {v!r}")


def premutate(iqp: IQP, v) -> IQP:
    """Premutation at v: composites, reversals, substitution, new 3-terms."""
    iq, W = iqp.quiver, iqp.potential
    if not is_irredundant(W, iq):
        raise RedundantPotentialTerm("potential has a term with only frozen arrows")
    icq._check_mutable(iq, v)
    incoming = iq.arrows_into(v)
    outgoing = iq.arrows_from(v)

    new_arrows = [a for a in iq.arrows if a.src != v and a.dst != v]
    composites = {}
    for alpha in incoming:
        for beta in outgoing:
            lab = icq.composite_label(beta, alpha)
            composites[(alpha.label, beta.label)] = lab
            new_arrows.append(Arrow(lab, alpha.src, beta.dst, False))
    star = {}
    for a in incoming + outgoing:
        star[a.label] = a.label + "*"
        new_arrows.append(Arrow(a.label + "*", a.dst, a.src, a.frozen))
    new_arrows.sort(key=lambda a: a.label)
    quiver = IceQuiver(iq.vertices, tuple(new_arrows))

    # substitute alpha,beta |-> [beta∘alpha] inside each term
    new_terms = {}
    for word, coeff in W.terms.items():
        labels = list(_rotate_away_from(word, iq, v))
        out = []
        i = 0
        while i < len(labels):
            a = labels[i]
            if i + 1 < len(labels) and (a, labels[i + 1]) in composites:
                out.append(composites[(a, labels[i + 1])])
                i += 2
            else:
                out.append(a)
                i += 1
        w2 = CyclicWord.of(out)
        new_terms[w2] = new_terms.get(w2, 0) + coeff
    # add [beta∘alpha] alpha* beta* per composite pair (cycle through v)
    for (al, bl), lab in composites.items():
        w2 = CyclicWord.of((lab, star[bl], star[al]))
        new_terms[w2] = new_terms.get(w2, 0) + 1
    out = IQP(quiver, Potential(new_terms))
    for w in out.potential.terms:
        check_cycle(quiver, w)
    return out


def _split_terms(W: Potential, x: str, y: str):
    """Split terms by occurrence of the 2-cycle arrows x, y.

    Returns (X, Y, C) where X holds the terms containing x, Y those
    containing y and C the rest.  A term containing both, or containing one
    of them twice, has no safe one-pass substitution; the caller treats that
    as a stabilization failure.
    """
    X, Y, C = {}, {}, {}
    for w, c in W.terms.items():
        nx, ny = w.count(x), w.count(y)
        if nx + ny == 0:
            C[w] = c
        elif nx == 1 and ny == 0:
            X[w] = c
        elif ny == 1 and nx == 0:
            Y[w] = c
        else:
            return None
    return X, Y, C


def _compose_paths(b_terms, a_terms):
    """All concatenations (coeff product, path_b + path_a) as cyclic words."""
    out = {}
    for cb, pb in b_terms:
        for ca, pa in a_terms:
            w = CyclicWord.of(pb + pa)
            out[w] = out.get(w, 0) + cb * ca
    return out


def reduce(iqp: IQP, cap: int | None = None) -> IQP:
    """Eliminate 2-cycle terms (trivial part of the potential).

    For a term c*x*y with c = ±1: if both arrows are unfrozen, both are
    deleted and the cross term -c*(dy W)(dx W) is added; if exactly one is
    frozen, the frozen arrow is deleted and the surviving unfrozen arrow is
    frozen in place, exactly as in step (4) of extended FZ mutation.
    """
    iq, W = iqp.quiver, iqp.potential
    if not is_irredundant(W, iq):
        raise RedundantPotentialTerm("potential has a term with only frozen arrows")
    if cap is None:
        cap = max(3 * W.max_cycle_len(), 9)
    arrows = list(iq.arrows)
    passes = 0
    while True:
        two = next((w for w in sorted(W.terms, key=lambda w: w.arrows) if len(w) == 2), None)
        if two is None:
            break
        passes += 1
        if passes > cap:
            raise SubstitutionNotStabilized(cap)
        c = W.terms[two]
        if abs(c) != 1:
            raise NonUnitTwoCycleCoefficient(f"term {two.arrows} has coefficient {c}")
        la, lb = two.arrows
        fa, fb = iq.arrow(la).frozen, iq.arrow(lb).frozen
        if fa and fb:
            raise RedundantPotentialTerm("2-cycle term with two frozen arrows")
        # orient so that x is the unfrozen arrow that may survive
        x, y = (la, lb) if not fa else (lb, la)
        y_frozen = iq.arrow(y).frozen
        rest = Potential({w: cc for w, cc in W.terms.items() if w != two})
        split = _split_terms(rest, x, y)
        if split is None:
            raise SubstitutionNotStabilized(cap, "term mixes the 2-cycle arrows")
        X, Y, C = split
        A = cyclic_derivative(Potential(X), x, iq)  # paths dst(x) -> src(x)
        B = cyclic_derivative(Potential(Y), y, iq)  # paths dst(y) -> src(y)
        cross = _compose_paths([(-c * cb, pb) for cb, pb in B], A)
        if y_frozen:
            # x survives and is frozen; only y is substituted away
            new_terms = dict(X)
            for w, cc in C.items():
                new_terms[w] = new_terms.get(w, 0) + cc
            arrows = [a for a in arrows if a.label != y]
            arrows = [
                Arrow(a.label, a.src, a.dst, True) if a.label == x else a for a in arrows
            ]
        else:
            new_terms = dict(C)
            arrows = [a for a in arrows if a.label not in (x, y)]
        for w, cc in cross.items():
            new_terms[w] = new_terms.get(w, 0) + cc
        W = Potential(new_terms)
        iq = IceQuiver(iq.vertices, tuple(arrows))
        gone = {x, y} if not y_frozen else {y}
        if W.arrows_used() & gone:
            raise SubstitutionNotStabilized(cap, "deleted arrow survives in the potential")
    icq.validate(iq)
    return IQP(iq, W)


def mutate_qp(iqp: IQP, v, cap: int | None = None) -> IQP:
    """QP mutation: reduction of the premutation."""
    return reduce(premutate(iqp, v), cap=cap)


# -- equality up to relabeling and arrow sign flips -------------------------


def relabel_potential(p: Potential, label_map) -> Potential:
    return Potential({CyclicWord.of(tuple(label_map[l] for l in w.arrows)): c for w, c in p.terms.items()})


def sign_normalize_match(p: Potential, q: Potential) -> bool:
    """True if q = p after flipping the signs of some set of arrows.

    Flipping arrow a multiplies each term by (-1)^(occurrences of a), so the
    existence of a flip set is a linear system over GF(2).
    """
    if set(p.terms) != set(q.terms):
        return False
    arrows = sorted({l for w in p.terms for l in w.arrows})
    idx = {l: i for i, l in enumerate(arrows)}
    rows = []
    rhs = []
    for w in sorted(p.terms, key=lambda w: w.arrows):
        cp, cq = p.terms[w], q.terms[w]
        if abs(cp) != abs(cq):
            return False
        vec = [0] * len(arrows)
        for l in w.arrows:
            vec[idx[l]] ^= 1
        rows.append(vec)
        rhs.append(0 if cp == cq else 1)
    # GF(2) elimination
    m = [row + [b] for row, b in zip(rows, rhs)]
    rank = 0
    for col in range(len(arrows)):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                m[r] = [a ^ b for a, b in zip(m[r], m[rank])]
        rank += 1
    return all(any(row[:-1]) or not row[-1] for row in m)


def qp_isomorphic(a: IQP, b: IQP, vertex_map=None):
    """Search a quiver iso of a -> b under which the potentials agree up to
    arrow sign flips.  Returns (vertex_map, label_map) or None."""
    vmaps = []
    if vertex_map is not None:
        vm = icq.iso(a.quiver, b.quiver, vertex_map)
        if vm is None:
            return None
        vmaps = [vm]
    else:
        vm = icq.iso(a.quiver, b.quiver)
        if vm is None:
            return None
        vmaps = [vm]
    for vm in vmaps:
        lm = _match_labels(a, b, vm)
        if lm is not None:
            return vm, lm
    return None


def _match_labels(a: IQP, b: IQP, vm):
    """Arrow bijection respecting vm; backtracks over parallel arrows."""
    buckets = {}
    for ar in b.quiver.arrows:
        buckets.setdefault((ar.src, ar.dst, ar.frozen), []).append(ar.label)
    slots = []
    for ar in a.quiver.arrows:
        key = (vm[ar.src], vm[ar.dst], ar.frozen)
        if key not in buckets:
            return None
        slots.append((ar.label, key))
    # group a-arrows by target bucket; try permutations within each bucket
    groups = {}
    for lab, key in slots:
        groups.setdefault(key, []).append(lab)
    if any(len(labs) != len(buckets[key]) for key, labs in groups.items()):
        return None
    keys = sorted(groups, key=repr)
    perms = [list(itertools.permutations(buckets[k])) for k in keys]
    for choice in itertools.product(*perms):
        lm = {}
        for k, perm in zip(keys, choice):
            for src_lab, dst_lab in zip(groups[k], perm):
                lm[src_lab] = dst_lab
        if sign_normalize_match(relabel_potential(a.potential, lm), b.potential):
            return lm
    return None
