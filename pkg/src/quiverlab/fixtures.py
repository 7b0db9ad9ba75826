"""Named fixtures shared by the CLI, the verification suite, the HTTP
service and the tests."""
from __future__ import annotations

from dataclasses import dataclass

from . import coxeter as cox
from . import interval as iv
from .icequiver import IceQuiver


@dataclass(frozen=True)
class Fixture:
    name: str
    quiver: IceQuiver
    kind: str  # "interval" | "framed" | "plain"
    word: iv.ExtendedWord | None = None
    a: int | None = None
    b: int | None = None
    xi: tuple | None = None
    layout: tuple | None = None  # ((vertex, row, col), ...) for the UI

    def interval(self) -> iv.IntervalIQP:
        assert self.kind == "interval"
        return iv.build_interval(self.word, self.a, self.b)


def _interval_fixture(name, type_name, base, a, b):
    d = cox.dynkin(type_name)
    w = iv.ExtendedWord(d, base)
    itv = iv.build_interval(w, a, b)
    rows = itv.rows()
    layout = []
    for i in sorted(rows):
        for col, s in enumerate(rows[i], start=1):
            layout.append((s, i, col))
    xi = iv.find_height_function(w)
    return Fixture(
        name,
        itv.quiver,
        "interval",
        word=w,
        a=a,
        b=b,
        xi=tuple(sorted(xi.items())) if xi else None,
        layout=tuple(layout),
    )


def _u_to_f() -> Fixture:
    q = IceQuiver.build([("u", False), ("f", True)], [("a", "u", "f", False)])
    return Fixture("u-to-f", q, "plain", layout=(("u", 1, 2), ("f", 1, 1)))


def _a2_free() -> Fixture:
    q = IceQuiver.build([(1, False), (2, False)], [("a", 1, 2, False)])
    return Fixture("a2-free", q, "plain", layout=((1, 1, 1), (2, 1, 2)))


_BUILDERS = {
    "u-to-f": _u_to_f,
    "a2-free": _a2_free,
    "a1-interval": lambda: _interval_fixture("a1-interval", "A1", (1,), -1, 0),
    "a1-interval-3": lambda: _interval_fixture("a1-interval-3", "A1", (1,), -2, 0),
    "a1-interval-4": lambda: _interval_fixture("a1-interval-4", "A1", (1,), -3, 0),
    "a2-interval": lambda: _interval_fixture("a2-interval", "A2", (1, 2, 1), -5, 0),
    "a3-example": lambda: _interval_fixture("a3-example", "A3", (1, 2, 3, 2, 1, 2), -2, 6),
    "a3-adapted": lambda: _interval_fixture("a3-adapted", "A3", (3, 1, 2, 3, 1, 2), -1, 6),
}


def fixture_names():
    return sorted(_BUILDERS)


def get_fixture(name: str) -> Fixture:
    if name not in _BUILDERS:
        raise KeyError(name)
    return _BUILDERS[name]()
