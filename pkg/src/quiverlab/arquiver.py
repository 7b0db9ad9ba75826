"""Module windows in the repetition quiver, dimension vectors by knitting,
and the derived translate in coordinates.

Conventions, fixed once and used by the Ext tables:
  * the window of a height function xi is {(i, xi_i + 2r) : 0 <= 2r <
    xi_{i*} - xi_i + h}, one point per indecomposable;
  * the leftmost point (i, xi_i) of row i is the projective whose dimension
    vector counts the downhill paths out of i (xi strictly decreasing);
  * wrapping (j, p) -> (j*, p - h) adds one suspension; an object written
    with m wraps sits in cohomological degree -m.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import coxeter as cox
from .coxeter import DynkinDiagram
from .errors import QuiverLabError


class OutsideWindow(QuiverLabError):
    pass


def _key(xi: dict):
    return tuple(sorted(xi.items()))


@lru_cache(maxsize=None)
def _window_tables(d: DynkinDiagram, xi_items):
    xi = dict(xi_items)
    cox.check_height(d, xi)
    wd = cox.weyl_data(d)
    pts = []
    for i in d.vertices:
        span = xi[wd.star[i]] - xi[i] + wd.coxeter_number
        assert span % 2 == 0 and span > 0
        for r in range(span // 2):
            pts.append((i, xi[i] + 2 * r))
    assert len(pts) == len(wd.positive), "window size must match the root count"

    dims = {}
    for i, p in sorted(pts, key=lambda t: t[1]):
        if p == xi[i]:
            # projective slice: downhill path counts out of i
            vec = [0] * d.rank
            for j in d.vertices:
                vec[j - 1] = _downhill_path(d, xi, i, j)
            dims[(i, p)] = tuple(vec)
        else:
            total = [0] * d.rank
            for j in d.neighbors(i):
                if (j, p - 1) in dims:
                    total = [a + b for a, b in zip(total, dims[(j, p - 1)])]
            assert (i, p - 2) in dims, "window rows must be contiguous"
            prev = dims[(i, p - 2)]
            vec = tuple(a - b for a, b in zip(total, prev))
            assert all(x >= 0 for x in vec) and any(vec), "knitting left the root lattice"
            dims[(i, p)] = vec
    assert sorted(dims.values()) == sorted(wd.positive), "window must knit the positive roots"
    return frozenset(pts), dims


def _downhill_path(d: DynkinDiagram, xi: dict, i: int, j: int) -> int:
    """1 if the tree path i -> j descends one height step per edge, else 0."""
    if i == j:
        return 1
    # unique tree path via BFS parent chain
    parent = {i: None}
    todo = [i]
    while todo:
        v = todo.pop()
        for u in d.neighbors(v):
            if u not in parent:
                parent[u] = v
                todo.append(u)
    path = [j]
    while path[-1] != i:
        path.append(parent[path[-1]])
    path.reverse()
    return int(all(xi[b] == xi[a] - 1 for a, b in zip(path, path[1:])))


def module_window(d: DynkinDiagram, xi: dict):
    """The set of window points (i, p); cardinality = number of positive roots."""
    pts, _ = _window_tables(d, _key(xi))
    return set(pts)


def dim_vector(d: DynkinDiagram, pt, xi: dict):
    """Dimension vector of the window point, as a tuple over the vertices."""
    pts, dims = _window_tables(d, _key(xi))
    if pt not in pts:
        raise OutsideWindow(f"{pt} is outside the module window")
    return dims[pt]


@dataclass(frozen=True)
class DerivedIndec:
    shift: int  # m >= 0: the object is the m-fold suspension of a module
    point: tuple  # (i, p) inside the window
    dimvec: tuple

    @property
    def degree(self) -> int:
        """Cohomological degree where the object is concentrated."""
        return -self.shift


def tau_inv_derived(d: DynkinDiagram, i: int, q: int, xi: dict) -> DerivedIndec:
    """tau^{-q} of the projective at row i, wrapped into the window."""
    pts, dims = _window_tables(d, _key(xi))
    star = cox.weyl_data(d).star
    h = cox.weyl_data(d).coxeter_number
    j, p = i, xi[i] + 2 * q
    m = 0
    guard = 2 * q + 2 * h + 2
    while (j, p) not in pts:
        j, p = star[j], p - h
        m += 1
        assert m <= guard, "wrap failed to land in the window"
    return DerivedIndec(m, (j, p), dims[(j, p)])


def ar_dot(d: DynkinDiagram, xi: dict) -> str:
    """Debug DOT dump of the knitted window with dimension vectors."""
    pts, dims = _window_tables(d, _key(xi))
    lines = ["digraph ar {", "  rankdir=LR;"]
    for i, p in sorted(pts):
        lines.append(f'  "{i},{p}" [label="({i},{p})\\n{dims[(i, p)]}"];')
    for i, p in sorted(pts):
        for j in d.neighbors(i):
            if (j, p + 1) in pts:
                lines.append(f'  "{i},{p}" -> "{j},{p + 1}";')
        if (i, p + 2) in pts:
            lines.append(f'  "{i},{p + 2}" -> "{i},{p}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines)
