"""ADE root systems and reduced-word combinatorics.

Roots are kept as integer coordinate tuples in the simple-root basis, and
Weyl elements act through simple reflections on those tuples; no matrix
representation is used.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import MovePreconditionFailed


@dataclass(frozen=True)
class DynkinDiagram:
    name: str
    vertices: tuple  # 1..n
    edges: frozenset  # of frozensets {i, j}

    def adjacent(self, i, j) -> bool:
        return frozenset((i, j)) in self.edges

    def neighbors(self, i):
        return sorted(j for j in self.vertices if self.adjacent(i, j))

    @property
    def rank(self):
        return len(self.vertices)


def dynkin(name: str) -> DynkinDiagram:
    """Parse "A3", "D4", "E6", "E7", "E8" into a diagram.

    D_n: the fork is at vertex n-2, with prongs n-1 and n.
    E_n: chain 1-3-4-5-..-n with 2 attached to 4 (Bourbaki).
    """
    name = name.strip().upper()
    kind, num = name[0], int(name[1:])
    if kind == "A":
        assert num >= 1
        edges = [(i, i + 1) for i in range(1, num)]
    elif kind == "D":
        assert num >= 4, "D_n needs n >= 4"
        edges = [(i, i + 1) for i in range(1, num - 1)] + [(num - 2, num)]
    elif kind == "E":
        assert num in (6, 7, 8)
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, num)]
    else:
        raise ValueError(f"unknown diagram {name!r}")
    return DynkinDiagram(name, tuple(range(1, num + 1)), frozenset(frozenset(e) for e in edges))


def reflect(d: DynkinDiagram, i: int, root):
    """Simple reflection s_i on a root in simple-root coordinates."""
    idx = i - 1
    out = list(root)
    out[idx] = -root[idx] + sum(root[j - 1] for j in d.neighbors(i))
    return tuple(out)


@lru_cache(maxsize=None)
def positive_roots(d: DynkinDiagram):
    """Reflection closure of the simple roots, positives only."""
    n = d.rank
    simples = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        simples.append(tuple(e))
    roots = set(simples)
    frontier = set(simples)
    while frontier:
        nxt = set()
        for r in frontier:
            for i in d.vertices:
                r2 = reflect(d, i, r)
                if all(x >= 0 for x in r2) and r2 not in roots:
                    nxt.add(r2)
        roots |= nxt
        frontier = nxt
    return frozenset(roots)


def apply_word(d: DynkinDiagram, word, root):
    """Left action s_{i_1} s_{i_2} ... s_{i_k} (rightmost letter acts first)."""
    for i in reversed(list(word)):
        root = reflect(d, i, root)
    return root


def is_reduced(d: DynkinDiagram, word) -> bool:
    """True iff len(word) equals the length of the represented element.

    Scans left to right: appending s_i increases length iff the current
    prefix sends alpha_i to a positive root.
    """
    prefix = []
    for i in word:
        e = [0] * d.rank
        e[i - 1] = 1
        img = apply_word(d, prefix, tuple(e))
        if all(x <= 0 for x in img):
            return False
        prefix.append(i)
    return True


def word_length(d: DynkinDiagram, word) -> int:
    """Coxeter length of the element represented by the word: the number of
    positive roots sent to negatives."""
    count = 0
    for r in positive_roots(d):
        img = apply_word(d, word, r)
        if all(x <= 0 for x in img):
            count += 1
    return count


@dataclass(frozen=True)
class WeylData:
    diagram: DynkinDiagram
    positive: frozenset
    longest_length: int
    star: dict  # i -> i*, from w0(alpha_i) = -alpha_{i*}
    coxeter_number: int


@lru_cache(maxsize=None)
def weyl_data(d: DynkinDiagram) -> WeylData:
    pos = positive_roots(d)
    lw0 = len(pos)
    h = 2 * lw0 // d.rank
    w0 = longest_word(d)
    star = {}
    for i in d.vertices:
        e = [0] * d.rank
        e[i - 1] = 1
        img = apply_word(d, w0, tuple(e))
        neg = tuple(-x for x in img)
        assert sum(neg) == 1 and all(x >= 0 for x in neg), "w0 must negate simples"
        star[i] = neg.index(1) + 1
    assert all(star[star[i]] == i for i in d.vertices), "star must be an involution"
    assert all(
        d.adjacent(star[i], star[j]) == d.adjacent(i, j) for i in d.vertices for j in d.vertices if i != j
    ), "star must preserve adjacency"
    return WeylData(d, pos, lw0, star, h)


@lru_cache(maxsize=None)
def longest_word(d: DynkinDiagram):
    """A reduced word for w0, built greedily: prepend any simple reflection
    that increases the number of positive roots sent to negatives."""
    pos = positive_roots(d)
    lw0 = len(pos)
    images = {r: r for r in pos}
    cur_len = 0
    letters = []
    while cur_len < lw0:
        for i in d.vertices:
            trial = {r: reflect(d, i, v) for r, v in images.items()}
            trial_len = sum(1 for v in trial.values() if all(x <= 0 for x in v))
            if trial_len == cur_len + 1:
                images = trial
                cur_len = trial_len
                letters.append(i)
                break
        else:
            raise AssertionError("failed to extend toward the longest element")
    word = tuple(reversed(letters))  # letters were composed on the left
    assert is_reduced(d, word)
    return word


def canonical_height(d: DynkinDiagram) -> dict:
    """Height function from a BFS 2-coloring: values in {0, 1}."""
    xi = {}
    todo = [min(d.vertices)]
    xi[todo[0]] = 0
    while todo:
        v = todo.pop()
        for w in d.neighbors(v):
            if w not in xi:
                xi[w] = 1 - xi[v]
                todo.append(w)
    return xi


def check_height(d: DynkinDiagram, xi: dict) -> None:
    for i in d.vertices:
        for j in d.neighbors(i):
            assert abs(xi[i] - xi[j]) == 1, f"|xi_{i} - xi_{j}| must be 1"


def orientation_of(d: DynkinDiagram, xi: dict):
    """Arrows (i, j) with xi_j = xi_i + 1 (uphill convention)."""
    check_height(d, xi)
    return [(i, j) for i in d.vertices for j in d.neighbors(i) if xi[j] == xi[i] + 1]


def sources_of(d: DynkinDiagram, xi: dict):
    return [i for i in d.vertices if all(xi[j] == xi[i] + 1 for j in d.neighbors(i))]


def sinks_of(d: DynkinDiagram, xi: dict):
    return [i for i in d.vertices if all(xi[j] == xi[i] - 1 for j in d.neighbors(i))]


def reflect_height(d: DynkinDiagram, xi: dict, i: int, down=False) -> dict:
    """s_i(xi) at a source (or, with down=True, the inverse at a sink)."""
    out = dict(xi)
    if down:
        assert i in sinks_of(d, xi), f"{i} is not a sink"
        out[i] -= 2
    else:
        assert i in sources_of(d, xi), f"{i} is not a source"
        out[i] += 2
    return out


def adapted_word(d: DynkinDiagram, xi: dict):
    """A w0 reduced word that is a source sequence for Q_xi.

    Sources are emitted slice by slice in ascending label order; the letter
    i appears exactly (xi_{i*} - xi_i + h)/2 times (its orbit length in the
    module window), which pins the final partial slice.
    """
    wd = weyl_data(d)
    quota = {i: (xi[wd.star[i]] - xi[i] + wd.coxeter_number) // 2 for i in d.vertices}
    lw0 = len(positive_roots(d))
    assert sum(quota.values()) == lw0
    cur = dict(xi)
    word = []
    while len(word) < lw0:
        emitted = False
        for i in sorted(sources_of(d, cur)):
            if quota[i] == 0:
                continue
            quota[i] -= 1
            word.append(i)
            cur = reflect_height(d, cur, i)
            emitted = True
        assert emitted, "emission stalled (height function corrupt)"
    word = tuple(word)
    assert is_reduced(d, word), "adapted word must be reduced"
    assert word_length(d, word) == lw0, "adapted word must represent w0"
    return word


def source_ordering(d: DynkinDiagram, xi: dict):
    """Topological order of Q_xi (smallest label first): a source sequence
    visiting every vertex exactly once."""
    arrows = orientation_of(d, xi)
    indeg = {v: 0 for v in d.vertices}
    for _, j in arrows:
        indeg[j] += 1
    out = []
    ready = sorted(v for v in d.vertices if indeg[v] == 0)
    while ready:
        v = ready.pop(0)
        out.append(v)
        for i, j in arrows:
            if i == v:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
        ready.sort()
    assert len(out) == d.rank
    return out


def sink_word(d: DynkinDiagram, xi: dict):
    """A w0 reduced word that is a sink sequence for Q_xi; letter quotas
    mirror those of adapted_word under height negation."""
    wd = weyl_data(d)
    quota = {i: (xi[i] - xi[wd.star[i]] + wd.coxeter_number) // 2 for i in d.vertices}
    lw0 = wd.longest_length
    assert sum(quota.values()) == lw0
    cur = dict(xi)
    word = []
    while len(word) < lw0:
        emitted = False
        for i in sorted(sinks_of(d, cur)):
            if quota[i] == 0:
                continue
            quota[i] -= 1
            word.append(i)
            cur = reflect_height(d, cur, i, down=True)
            emitted = True
        assert emitted, "emission stalled (height function corrupt)"
    word = tuple(word)
    assert is_reduced(d, word) and word_length(d, word) == lw0
    return word


def is_source_sequence(d: DynkinDiagram, xi: dict, word) -> bool:
    cur = dict(xi)
    for i in word:
        if i not in sources_of(d, cur):
            return False
        cur = reflect_height(d, cur, i)
    return True


def all_height_functions(d: DynkinDiagram):
    """One height function per orientation of the diagram (values near 0)."""
    edges = sorted(tuple(sorted(e)) for e in d.edges)
    out = []
    for mask in range(1 << len(edges)):
        orient = {}
        for b, (i, j) in enumerate(edges):
            orient[(i, j)] = (mask >> b) & 1  # 1 means i -> j uphill
        xi = {min(d.vertices): 0}
        stack = [min(d.vertices)]
        while stack:
            v = stack.pop()
            for w in d.neighbors(v):
                if w in xi:
                    continue
                i, j = min(v, w), max(v, w)
                up = orient[(i, j)]
                if (v, w) == (i, j):
                    xi[w] = xi[v] + (1 if up else -1)
                else:
                    xi[w] = xi[v] - (1 if up else -1)
                stack.append(w)
        out.append(xi)
    return out


def word_to_perm(d: DynkinDiagram, word):
    """The represented element as a map on roots, via its action table on
    positive roots (negatives by sign)."""
    table = {}
    for r in positive_roots(d):
        table[r] = apply_word(d, word, r)
    return table


def same_element(d: DynkinDiagram, w1, w2) -> bool:
    return word_to_perm(d, w1) == word_to_perm(d, w2)


def apply_move(seq, kind: str, s: int, adjacent) -> dict:
    """Commutation or braid move on an integer-indexed letter sequence.

    seq: a callable position -> letter.  Returns the override dict for the
    finitely many changed positions.  adjacent(i, j) tests diagram adjacency.
    """
    a, b = seq(s), seq(s + 1)
    if kind == "commutation":
        if adjacent(a, b) or a == b:
            raise MovePreconditionFailed(f"letters {a},{b} at {s},{s+1} do not commute")
        return {s: b, s + 1: a}
    if kind == "braid":
        prev = seq(s - 1)
        if not adjacent(a, b):
            raise MovePreconditionFailed(f"letters {a},{b} at {s},{s+1} are not adjacent")
        if prev != b:
            raise MovePreconditionFailed(
                f"braid needs pattern (j,i,j) at {s-1},{s},{s+1}; got ({prev},{a},{b})"
            )
        return {s - 1: a, s: b, s + 1: a}
    raise ValueError(f"unknown move kind {kind!r}")
