"""Finite ice quivers and extended Fomin-Zelevinsky mutation.

Vertex ids may be ints, strings, or (nested) tuples; tuples arise from
products and framed copies.  Arrows carry stable string labels so that
potentials and mutation traces stay reproducible.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass

from .errors import (
    DanglingArrow,
    DuplicateLabel,
    FrozenArrowUnfrozenEndpoint,
    LoopOrTwoCycleAtVertex,
    VertexFrozen,
)

log = logging.getLogger(__name__)


def id_key(v):
    """Total order on heterogeneous vertex ids (ints < strs < tuples)."""
    if isinstance(v, bool):  # bools are ints, keep them out
        v = int(v)
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, tuple(id_key(x) for x in v))
    raise TypeError(f"unsupported vertex id {v!r}")


@dataclass(frozen=True)
class Vertex:
    id: object
    frozen: bool = False


@dataclass(frozen=True)
class Arrow:
    label: str
    src: object
    dst: object
    frozen: bool = False


@dataclass(frozen=True)
class IceQuiver:
    vertices: tuple  # of Vertex
    arrows: tuple  # of Arrow, ordered list with stable labels

    def __post_init__(self):
        object.__setattr__(self, "_vmap", {v.id: v for v in self.vertices})

    @staticmethod
    def build(vertices, arrows) -> "IceQuiver":
        """vertices: iterable of (id, frozen); arrows: (label, src, dst, frozen)."""
        vs = tuple(Vertex(i, bool(f)) for i, f in vertices)
        ars = tuple(Arrow(str(l), s, d, bool(f)) for l, s, d, f in arrows)
        iq = IceQuiver(vs, ars)
        validate(iq)
        return iq

    # --- lookups ---------------------------------------------------------
    def vertex(self, vid) -> Vertex:
        return self._vmap[vid]

    def has_vertex(self, vid) -> bool:
        return vid in self._vmap

    def is_frozen(self, vid) -> bool:
        return self._vmap[vid].frozen

    def vertex_ids(self):
        return [v.id for v in self.vertices]

    def unfrozen_ids(self):
        return [v.id for v in self.vertices if not v.frozen]

    def frozen_ids(self):
        return [v.id for v in self.vertices if v.frozen]

    def arrow(self, label) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def arrows_from(self, vid):
        return [a for a in self.arrows if a.src == vid]

    def arrows_into(self, vid):
        return [a for a in self.arrows if a.dst == vid]

    def arrows_between(self, src, dst):
        return [a for a in self.arrows if a.src == src and a.dst == dst]

    def arrow_count(self, src, dst, unfrozen_only=False):
        return sum(
            1
            for a in self.arrows
            if a.src == src and a.dst == dst and not (unfrozen_only and a.frozen)
        )

    def default_order(self):
        """Unfrozen ids ascending, then frozen ids ascending."""
        return sorted(self.unfrozen_ids(), key=id_key) + sorted(self.frozen_ids(), key=id_key)

    # --- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vertices": [{"id": _id_out(v.id), "frozen": v.frozen} for v in self.vertices],
            "arrows": [
                {"label": a.label, "src": _id_out(a.src), "dst": _id_out(a.dst), "frozen": a.frozen}
                for a in self.arrows
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "IceQuiver":
        return IceQuiver.build(
            [(_id_in(v["id"]), v["frozen"]) for v in data["vertices"]],
            [(a["label"], _id_in(a["src"]), _id_in(a["dst"]), a["frozen"]) for a in data["arrows"]],
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def to_dot(self, colors=None) -> str:
        """DOT export; frozen vertices are blue boxes, frozen arrows blue."""
        lines = ["digraph quiver {"]
        for v in sorted(self.vertices, key=lambda v: id_key(v.id)):
            attrs = ['label="%s"' % _dot_name(v.id)]
            if v.frozen:
                attrs += ["shape=box", "color=blue"]
            elif colors and v.id in colors:
                attrs += ["style=filled", f'fillcolor={"palegreen" if colors[v.id] == "green" else "salmon"}']
            lines.append(f'  "{_dot_name(v.id)}" [{", ".join(attrs)}];')
        for a in self.arrows:
            attrs = [f'label="{a.label}"']
            if a.frozen:
                attrs.append("color=blue")
            lines.append(f'  "{_dot_name(a.src)}" -> "{_dot_name(a.dst)}" [{", ".join(attrs)}];')
        lines.append("}")
        return "\n".join(lines)


def _id_out(v):
    if isinstance(v, tuple):
        return [_id_out(x) for x in v]
    return v


def _id_in(v):
    if isinstance(v, list):
        return tuple(_id_in(x) for x in v)
    return v


def _dot_name(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(_dot_name(x) for x in v) + ")"
    return str(v)


def validate(iq: IceQuiver) -> None:
    """Check all type invariants; raises on the first violation."""
    seen_v = set()
    for v in iq.vertices:
        if v.id in seen_v:
            raise DuplicateLabel(f"duplicate vertex id {v.id!r}")
        seen_v.add(v.id)
    seen_a = set()
    for a in iq.arrows:
        if a.label in seen_a:
            raise DuplicateLabel(f"duplicate arrow label {a.label!r}")
        seen_a.add(a.label)
        if a.src not in seen_v or a.dst not in seen_v:
            raise DanglingArrow(f"arrow {a.label!r} has endpoint outside the quiver")
        if a.frozen and not (iq.is_frozen(a.src) and iq.is_frozen(a.dst)):
            raise FrozenArrowUnfrozenEndpoint(f"frozen arrow {a.label!r} at unfrozen endpoint")


def loops_and_two_cycles(iq: IceQuiver):
    """Report (loops at vertex, set of 2-cycle vertex pairs)."""
    loops = {}
    for a in iq.arrows:
        if a.src == a.dst:
            loops.setdefault(a.src, []).append(a.label)
    pairs = set()
    for a in iq.arrows:
        if a.src != a.dst and iq.arrows_between(a.dst, a.src):
            pairs.add(tuple(sorted((a.src, a.dst), key=id_key)))
    return loops, pairs


def _check_mutable(iq: IceQuiver, v) -> None:
    if not iq.has_vertex(v):
        raise DanglingArrow(f"no vertex {v!r}")
    if iq.is_frozen(v):
        raise VertexFrozen(f"vertex {v!r} is frozen")
    for a in iq.arrows:
        if a.src == v and a.dst == v:
            raise LoopOrTwoCycleAtVertex(f"loop at {v!r}")
    for a in iq.arrows_from(v):
        if iq.arrows_between(a.dst, v):
            raise LoopOrTwoCycleAtVertex(f"2-cycle at {v!r} through {a.dst!r}")


def composite_label(beta: Arrow, alpha: Arrow) -> str:
    """Fresh label for the composite of alpha: u->v followed by beta: v->w."""
    return f"[{beta.label}∘{alpha.label}]"


def mutate_fz(iq: IceQuiver, v) -> IceQuiver:
    """Extended Fomin-Zelevinsky mutation at an unfrozen vertex v.

    Steps: (1) composites through v, (2) reverse arrows at v, (3) cancel a
    maximal collection of fully-unfrozen 2-cycles, (4) turn each half-frozen
    2-cycle into a frozen arrow along its unfrozen member.  Collections in
    (3)/(4) are chosen greedily in label order, so the result is
    deterministic; it is well defined up to isomorphism.
    """
    _check_mutable(iq, v)
    incoming = iq.arrows_into(v)
    outgoing = iq.arrows_from(v)

    new_arrows = []
    for a in iq.arrows:
        if a.src == v or a.dst == v:
            continue
        new_arrows.append(a)
    # (1) composites [beta∘alpha]: u -> w, unfrozen
    composites = []
    for alpha in incoming:
        for beta in outgoing:
            composites.append(Arrow(composite_label(beta, alpha), alpha.src, beta.dst, False))
    composites.sort(key=lambda a: a.label)
    new_arrows.extend(composites)
    # (2) reversals
    for a in incoming + outgoing:
        new_arrows.append(Arrow(a.label + "*", a.dst, a.src, a.frozen))

    new_arrows = _cancel_two_cycles(iq, new_arrows)
    out = IceQuiver(iq.vertices, tuple(new_arrows))
    validate(out)
    return out


def _cancel_two_cycles(iq: IceQuiver, arrows):
    """Steps (3) and (4) of extended FZ mutation, greedy in label order."""
    arrows = sorted(arrows, key=lambda a: a.label)
    # (3) fully-unfrozen 2-cycles
    removed = set()
    for i, a in enumerate(arrows):
        if i in removed or a.frozen:
            continue
        for j, b in enumerate(arrows):
            if j <= i or j in removed or b.frozen:
                continue
            if b.src == a.dst and b.dst == a.src and a.src != a.dst:
                removed.add(i)
                removed.add(j)
                break
    arrows = [a for i, a in enumerate(arrows) if i not in removed]
    # (4) half-frozen 2-cycles -> frozen arrow along the unfrozen member
    changed = True
    while changed:
        changed = False
        for a in arrows:
            if a.frozen:
                continue
            partner = next(
                (b for b in arrows if b.frozen and b.src == a.dst and b.dst == a.src), None
            )
            if partner is not None:
                if iq.is_frozen(a.src) and iq.is_frozen(a.dst):
                    log.debug(
                        "half-frozen 2-cycle between frozen vertices %r,%r resolved literally",
                        a.src,
                        a.dst,
                    )
                arrows = [x for x in arrows if x is not a and x is not partner]
                arrows.append(Arrow(a.label, a.src, a.dst, True))
                arrows.sort(key=lambda x: x.label)
                changed = True
                break
    return arrows


def frame(q: IceQuiver, co: bool = False) -> IceQuiver:
    """Framed quiver (co=False) or coframed quiver (co=True).

    Adds a frozen copy ("f", v) per vertex and an arrow v -> ("f", v), or
    ("f", v) -> v in the coframed case.  The input must have no frozen
    vertices.
    """
    if q.frozen_ids():
        raise VertexFrozen("frame() expects a quiver without frozen vertices")
    verts = list(q.vertices) + [Vertex(("f", v.id), True) for v in q.vertices]
    arrows = list(q.arrows)
    for v in q.vertices:
        fid = ("f", v.id)
        label = f"fr[{_dot_name(v.id)}]"
        if co:
            arrows.append(Arrow(label, fid, v.id, False))
        else:
            arrows.append(Arrow(label, v.id, fid, False))
    out = IceQuiver(tuple(verts), tuple(arrows))
    validate(out)
    return out


def forget_frozen(iq: IceQuiver) -> IceQuiver:
    """Delete frozen vertices and every incident arrow."""
    keep = {v.id for v in iq.vertices if not v.frozen}
    return IceQuiver(
        tuple(v for v in iq.vertices if not v.frozen),
        tuple(a for a in iq.arrows if a.src in keep and a.dst in keep),
    )


def product(q: IceQuiver, q2: IceQuiver, kind: str = "triangle") -> IceQuiver:
    """Tensor or triangle product; vertex ids are pairs (v, v')."""
    assert kind in ("tensor", "triangle")
    verts = [Vertex((a.id, b.id), a.frozen or b.frozen) for a in q.vertices for b in q2.vertices]
    arrows = []
    for alpha in q.arrows:
        for w in q2.vertices:
            arrows.append(
                Arrow(f"({alpha.label},{_dot_name(w.id)})", (alpha.src, w.id), (alpha.dst, w.id), False)
            )
    for v in q.vertices:
        for beta in q2.arrows:
            arrows.append(
                Arrow(f"({_dot_name(v.id)},{beta.label})", (v.id, beta.src), (v.id, beta.dst), False)
            )
    if kind == "triangle":
        for alpha in q.arrows:
            for beta in q2.arrows:
                arrows.append(
                    Arrow(
                        f"({alpha.label},{beta.label})op",
                        (alpha.dst, beta.dst),
                        (alpha.src, beta.src),
                        False,
                    )
                )
    out = IceQuiver(tuple(verts), tuple(arrows))
    validate(out)
    return out


def flatten_index(q: IceQuiver, q2: IceQuiver):
    """Map pair-ids of product(q, q2, ·) to 0..n*m-1, row-major in q."""
    ids2 = [w.id for w in q2.vertices]
    return {
        (v.id, wid): i * len(ids2) + j
        for i, v in enumerate(q.vertices)
        for j, wid in enumerate(ids2)
    }


def iso(iq: IceQuiver, iq2: IceQuiver, vertex_map=None):
    """Frozen-flag and arrow-multiplicity preserving vertex bijection, or None.

    With vertex_map given, only that candidate bijection is checked.
    Otherwise a backtracking search over signature-compatible assignments
    runs; quivers here are desk scale.
    """
    if len(iq.vertices) != len(iq2.vertices) or len(iq.arrows) != len(iq2.arrows):
        return None

    def signature(q, vid):
        outs = sorted((a.frozen, 1) for a in q.arrows_from(vid))
        ins = sorted((a.frozen, 1) for a in q.arrows_into(vid))
        return (q.is_frozen(vid), len(outs), len(ins), tuple(outs), tuple(ins))

    def matches(q, q2, mapping):
        for s, t in mapping.items():
            for s2, t2 in mapping.items():
                for fr in (False, True):
                    c1 = sum(1 for a in q.arrows_between(s, s2) if a.frozen == fr)
                    c2 = sum(1 for a in q2.arrows_between(t, t2) if a.frozen == fr)
                    if c1 != c2:
                        return False
        return True

    if vertex_map is not None:
        mapping = dict(vertex_map)
        if set(mapping) != set(iq.vertex_ids()) or set(mapping.values()) != set(iq2.vertex_ids()):
            return None
        if any(iq.is_frozen(s) != iq2.is_frozen(t) for s, t in mapping.items()):
            return None
        return mapping if matches(iq, iq2, mapping) else None

    sig1 = {v.id: signature(iq, v.id) for v in iq.vertices}
    sig2 = {v.id: signature(iq2, v.id) for v in iq2.vertices}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return None
    order = sorted(iq.vertex_ids(), key=lambda v: (sig1[v], id_key(v)))

    def consistent(mapping, s, t):
        for s2, t2 in mapping.items():
            for fr in (False, True):
                if sum(1 for a in iq.arrows_between(s, s2) if a.frozen == fr) != sum(
                    1 for a in iq2.arrows_between(t, t2) if a.frozen == fr
                ):
                    return False
                if sum(1 for a in iq.arrows_between(s2, s) if a.frozen == fr) != sum(
                    1 for a in iq2.arrows_between(t2, t) if a.frozen == fr
                ):
                    return False
        for fr in (False, True):
            if sum(1 for a in iq.arrows_between(s, s) if a.frozen == fr) != sum(
                1 for a in iq2.arrows_between(t, t) if a.frozen == fr
            ):
                return False
        return True

    used = set()
    mapping = {}

    def backtrack(k):
        if k == len(order):
            return True
        s = order[k]
        for t in iq2.vertex_ids():
            if t in used or sig2[t] != sig1[s]:
                continue
            if not consistent(mapping, s, t):
                continue
            mapping[s] = t
            used.add(t)
            if backtrack(k + 1):
                return True
            del mapping[s]
            used.remove(t)
        return False

    if backtrack(0):
        return dict(mapping)
    return None
