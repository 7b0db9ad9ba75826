import pytest

from quiverlab.errors import (
    NonUnitTwoCycleCoefficient,
    RedundantPotentialTerm,
    UnknownArrow,
)
from quiverlab.icequiver import IceQuiver, iso
from quiverlab.potential import (
    IQP,
    CyclicWord,
    Potential,
    cyclic_derivative,
    mutate_qp,
    premutate,
    qp_isomorphic,
    reduce,
    sign_normalize_match,
)


def triangle():
    """1 -a-> 2 -b-> 3 -c-> 1 with potential abc."""
    q = IceQuiver.build(
        [(1, False), (2, False), (3, False)],
        [("a", 1, 2, False), ("b", 2, 3, False), ("c", 3, 1, False)],
    )
    return IQP(q, Potential.of(q, [(1, ["a", "b", "c"])]))


class TestCyclicDerivative:
    def test_single_occurrence(self):
        iqp = triangle()
        assert cyclic_derivative(iqp.potential, "a", iqp.quiver) == [(1, ("b", "c"))]

    def test_two_occurrences(self):
        # loops at one vertex: aba is a cycle with a appearing twice
        q = IceQuiver.build([(1, False)], [("a", 1, 1, False), ("b", 1, 1, False)])
        p = Potential.of(q, [(1, ["a", "b", "a"])])
        got = cyclic_derivative(p, "a", q)
        assert sorted(path for _, path in got) == [("a", "b"), ("b", "a")]

    def test_absent_arrow(self):
        q = IceQuiver.build(
            [(1, False), (2, False)],
            [("a", 1, 2, False), ("b", 2, 1, False), ("c", 1, 2, False)],
        )
        p = Potential.of(q, [(1, ["a", "b"])])
        assert cyclic_derivative(p, "c", q) == []

    def test_unknown_arrow(self):
        iqp = triangle()
        with pytest.raises(UnknownArrow):
            cyclic_derivative(iqp.potential, "zz", iqp.quiver)

    def test_euler_identity(self):
        # sum over arrows alpha of alpha * d_alpha(c) = len(c) * c cyclically
        iqp = triangle()
        counts = {}
        for lab in ("a", "b", "c"):
            for coeff, path in cyclic_derivative(iqp.potential, lab, iqp.quiver):
                w = CyclicWord.of((lab,) + path)
                counts[w] = counts.get(w, 0) + coeff
        (term,) = iqp.potential.terms
        assert counts == {term: len(term)}


class TestPremutate:
    def test_zero_potential_line(self):
        q = IceQuiver.build(
            [(1, False), (2, False), (3, False)],
            [("a", 1, 2, False), ("b", 2, 3, False)],
        )
        iqp = IQP(q, Potential())
        out = premutate(iqp, 2)
        assert len(out.potential.terms) == 1
        ((w, c),) = out.potential.terms.items()
        assert c == 1 and len(w) == 3
        assert set(w.arrows) == {"[b∘a]", "a*", "b*"}

    def test_triangle_substitution(self):
        out = premutate(triangle(), 2)
        # abc had the through-2 path a,b; term becomes [b∘a]c plus the new 3-term
        words = {w.arrows: c for w, c in out.potential.terms.items()}
        assert words[CyclicWord.of(("[b∘a]", "c")).arrows] == 1
        assert words[CyclicWord.of(("[b∘a]", "b*", "a*")).arrows] == 1

    def test_redundant_potential_rejected(self):
        q = IceQuiver.build(
            [(1, True), (2, True), (3, False)],
            [
                ("a", 1, 2, True),
                ("b", 2, 1, True),
                ("x", 2, 3, False),
                ("y", 3, 2, False),
            ],
        )
        iqp = IQP(q, Potential.of(q, [(1, ["a", "b"])]))
        with pytest.raises(RedundantPotentialTerm):
            premutate(iqp, 3)


class TestReduce:
    def test_fixed_point(self):
        iqp = triangle()
        out = reduce(iqp)
        assert out.potential == iqp.potential
        assert out.quiver.dumps() == iqp.quiver.dumps()

    def test_bare_two_cycle(self):
        q = IceQuiver.build(
            [(1, False), (2, False)], [("x", 1, 2, False), ("y", 2, 1, False)]
        )
        out = reduce(IQP(q, Potential.of(q, [(1, ["x", "y"])])))
        assert out.potential.is_zero()
        assert len(out.quiver.arrows) == 0

    def test_cross_term(self):
        # x,y is a 2-cycle; x also sits in a triangle x*a1*a2 and y in y*b1*b2;
        # eliminating (x, y) leaves the glued 4-cycle with a minus sign.
        q = IceQuiver.build(
            [(1, False), (2, False), (3, False), (4, False)],
            [
                ("x", 1, 2, False),
                ("y", 2, 1, False),
                ("a1", 2, 3, False),
                ("a2", 3, 1, False),
                ("b1", 1, 4, False),
                ("b2", 4, 2, False),
            ],
        )
        W = Potential.of(q, [(1, ["x", "y"]), (1, ["x", "a1", "a2"]), (1, ["y", "b1", "b2"])])
        out = reduce(IQP(q, W))
        assert set(a.label for a in out.quiver.arrows) == {"a1", "a2", "b1", "b2"}
        ((w, c),) = out.potential.terms.items()
        assert c == -1
        assert w == CyclicWord.of(("b1", "b2", "a1", "a2"))

    def test_half_frozen_two_cycle(self):
        # frozen delta: f2 -> f1 against unfrozen x: f1 -> f2 (both endpoints
        # frozen vertices); reduction deletes delta and freezes x.
        q = IceQuiver.build(
            [("f1", True), ("f2", True), (3, False)],
            [
                ("x", "f1", "f2", False),
                ("delta", "f2", "f1", True),
                ("u", "f2", 3, False),
                ("v", 3, "f1", False),
            ],
        )
        W = Potential.of(q, [(1, ["x", "delta"]), (1, ["x", "u", "v"])])
        out = reduce(IQP(q, W))
        labels = {a.label: a for a in out.quiver.arrows}
        assert "delta" not in labels
        assert labels["x"].frozen
        assert list(out.potential.terms) == [CyclicWord.of(("x", "u", "v"))]

    def test_non_unit_coefficient(self):
        q = IceQuiver.build(
            [(1, False), (2, False)], [("x", 1, 2, False), ("y", 2, 1, False)]
        )
        with pytest.raises(NonUnitTwoCycleCoefficient):
            reduce(IQP(q, Potential.of(q, [(2, ["x", "y"])])))

    def test_idempotent(self):
        iqp = premutate(triangle(), 2)
        once = reduce(iqp)
        twice = reduce(once)
        assert once.potential == twice.potential
        assert once.quiver.dumps() == twice.quiver.dumps()


class TestMutateQP:
    def test_quiver_part_matches_fz(self):
        from quiverlab.fixtures import get_fixture
        from quiverlab.icequiver import mutate_fz

        for name in ("a2-interval", "a3-adapted", "a3-example"):
            fx = get_fixture(name)
            itv = fx.interval()
            for v in itv.quiver.unfrozen_ids():
                if any(
                    itv.quiver.arrows_between(x.dst, v)
                    for x in itv.quiver.arrows_from(v)
                ):
                    continue
                got = mutate_qp(itv.iqp, v).quiver
                want = mutate_fz(itv.quiver, v)
                assert iso(got, want) is not None, (name, v)

    def test_double_mutation_iso(self):
        from quiverlab.fixtures import get_fixture

        itv = get_fixture("a2-interval").interval()
        for v in itv.quiver.unfrozen_ids():
            back = mutate_qp(mutate_qp(itv.iqp, v), v)
            assert qp_isomorphic(back, itv.iqp) is not None, v

    def test_random_walks_track_fz_mutation(self):
        import random

        from quiverlab.fixtures import get_fixture
        from quiverlab.icequiver import mutate_fz

        rng = random.Random(31)
        itv = get_fixture("a3-adapted").interval()
        for _ in range(8):
            iqp = itv.iqp
            quiver = itv.quiver
            for _ in range(3):
                legal = [
                    v
                    for v in quiver.unfrozen_ids()
                    if not any(
                        quiver.arrows_between(x.dst, v) for x in quiver.arrows_from(v)
                    )
                ]
                v = rng.choice(legal)
                iqp = mutate_qp(iqp, v)
                quiver = mutate_fz(quiver, v)
                assert iso(iqp.quiver, quiver) is not None, v


def test_potential_json_roundtrip():
    iqp = premutate(triangle(), 2)
    doc = iqp.potential.to_json()
    back = Potential.from_json(doc, iqp.quiver)
    assert back == iqp.potential
    # canonical rotation: every stored cycle is its least rotation
    for entry in doc:
        cyc = tuple(entry["cycle"])
        assert cyc == CyclicWord.of(cyc).arrows


def test_sign_normalize_match():
    q = triangle()
    p = q.potential
    flipped = Potential({w: -c for w, c in p.terms.items()})
    assert sign_normalize_match(p, flipped)
    # a two-term potential where one sign cannot be fixed alone
    qq = IceQuiver.build(
        [(1, False), (2, False)],
        [("x", 1, 2, False), ("y", 2, 1, False), ("z", 2, 1, False)],
    )
    p1 = Potential.of(qq, [(1, ["x", "y"]), (1, ["x", "z"])])
    p2 = Potential.of(qq, [(1, ["x", "y"]), (-1, ["x", "z"])])
    assert sign_normalize_match(p1, p2)  # flip z
    p3 = Potential.of(qq, [(-1, ["x", "y"]), (-1, ["x", "z"])])
    assert sign_normalize_match(p1, p3)  # flip x
