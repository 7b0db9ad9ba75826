"""Green/red bookkeeping on framed quivers and maximal green sequences."""
from __future__ import annotations

from dataclasses import dataclass

from . import coxeter as cox
from .errors import MutationIllegal, NotGreenAtStep, QuiverLabError, VertexFrozen, WindowTooSmall
from .icequiver import IceQuiver, frame, iso, mutate_fz


def colors_of(current: IceQuiver) -> dict:
    """green iff no arrow from a frozen vertex into the unfrozen vertex."""
    out = {}
    for v in current.unfrozen_ids():
        red = any(current.is_frozen(a.src) for a in current.arrows_into(v))
        out[v] = "red" if red else "green"
    return out


@dataclass(frozen=True)
class GreenState:
    current: IceQuiver
    base: IceQuiver

    @property
    def colors(self) -> dict:
        return colors_of(self.current)


@dataclass(frozen=True)
class GreenRun:
    sequence: tuple
    final: GreenState
    sigma: dict | None  # permutation of base vertices; present iff maximal


def end_permutation(current: IceQuiver, base: IceQuiver) -> dict:
    """The unique frozen-fixing isomorphism current -> coframed(base).

    Every unfrozen vertex u must receive exactly one arrow from a frozen
    vertex ("f", v); then sigma(u) = v.  The candidate map is verified to be
    an isomorphism before being returned.
    """
    cof = frame(base, co=True)
    sigma = {}
    for u in current.unfrozen_ids():
        frozen_srcs = [a.src for a in current.arrows_into(u) if current.is_frozen(a.src)]
        if len(frozen_srcs) != 1:
            raise QuiverLabError(f"vertex {u!r} receives {len(frozen_srcs)} frozen arrows")
        tag, v = frozen_srcs[0]
        assert tag == "f"
        sigma[u] = v
    vmap = {u: sigma[u] for u in sigma}
    vmap.update({f: f for f in current.frozen_ids()})
    if iso(current, cof, vmap) is None:
        raise QuiverLabError("final quiver is not isomorphic to the coframed quiver")
    return sigma


def run_green(q: IceQuiver, seq) -> GreenRun:
    """Mutate the framed quiver along seq, requiring greenness stepwise.

    When the run ends with every unfrozen vertex red, it is maximal and the
    end permutation sigma is computed; otherwise sigma is None.
    """
    if q.frozen_ids():
        raise VertexFrozen("run_green expects a quiver without frozen vertices")
    current = frame(q)
    for k, v in enumerate(seq, start=1):
        cols = colors_of(current)
        if v not in cols:
            raise MutationIllegal(k, f"step {k}: no unfrozen vertex {v!r}")
        if cols[v] != "green":
            raise NotGreenAtStep(k, v)
        try:
            current = mutate_fz(current, v)
        except QuiverLabError as exc:
            raise MutationIllegal(k, f"step {k}: {exc}") from exc
    state = GreenState(current, q)
    sigma = None
    if all(c == "red" for c in state.colors.values()):
        sigma = end_permutation(current, q)
    return GreenRun(tuple(seq), state, sigma)


def boxtimes_sequence(v, w):
    """Interleaving ((v1,w1),...,(v1,ws),(v2,w1),...) for triangle products."""
    return [(a, b) for a in v for b in w]


def duality_sequence(interval, coords: dict, n: int, r: int):
    """Truncated duality mutation sequence on an interval quiver.

    interval: an IntervalIQP whose word is adapted; coords: its
    hl_coordinates.  Returns vertex ids of the quiver: n alternating
    sweeps (plain, starred, plain, ...), each sweep running over the rows
    in sink order i_b, i_{b-1}, ..., every row right to left through
    columns 1..r.  Raises WindowTooSmall when a required position is
    missing or frozen.
    """
    w = interval.word
    d = w.diagram
    star = cox.weyl_data(d).star
    by_coord = {c: v for v, c in coords.items()}
    xi_b = {i: max(p for (j, p) in coords.values() if j == i) + 2 for i in d.vertices}
    row_order = [w.letter(interval.b - k) for k in range(w.period)]
    out = []
    for sweep in range(n):
        twist = (lambda i: star[i]) if sweep % 2 else (lambda i: i)
        for row in row_order:
            i = twist(row)
            for s in range(1, r + 1):
                pos = (i, xi_b[i] - 2 * s)
                if pos not in by_coord:
                    raise WindowTooSmall(f"position {pos} outside the window")
                vid = by_coord[pos]
                if interval.quiver.is_frozen(vid):
                    raise WindowTooSmall(f"position {pos} is frozen; extend the window")
                out.append(vid)
    return out
