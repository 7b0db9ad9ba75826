import random

import pytest

from quiverlab import coxeter as cox
from quiverlab import extensions as ext
from quiverlab import green as gr
from quiverlab import interval as iv
from quiverlab.errors import NotGreenAtStep, WindowTooSmall
from quiverlab.icequiver import IceQuiver, forget_frozen, frame, iso


def a2_quiver():
    return IceQuiver.build([(1, False), (2, False)], [("a", 1, 2, False)])


class TestRunGreen:
    def test_source_sequence(self):
        run = gr.run_green(a2_quiver(), [1, 2])
        assert run.sigma == {1: 1, 2: 2}

    def test_sink_w0_word(self):
        run = gr.run_green(a2_quiver(), [2, 1, 2])
        assert run.sigma == {1: 2, 2: 1}

    def test_not_green(self):
        with pytest.raises(NotGreenAtStep) as exc:
            gr.run_green(a2_quiver(), [1, 1])
        assert exc.value.step == 2

    def test_incomplete_run_has_no_sigma(self):
        run = gr.run_green(a2_quiver(), [1])
        assert run.sigma is None

    def test_final_iso_to_coframed(self):
        run = gr.run_green(a2_quiver(), [2, 1, 2])
        cof = frame(a2_quiver(), co=True)
        vmap = {u: run.sigma[u] for u in (1, 2)}
        vmap.update({f: f for f in cof.frozen_ids()})
        assert iso(run.final.current, cof, vmap) is not None

    def test_random_acyclic_source_sequences(self):
        rng = random.Random(23)
        for trial in range(20):
            n = rng.randint(2, 8)
            # random acyclic quiver: arrows go up in a random topological order
            perm = list(range(1, n + 1))
            rng.shuffle(perm)
            arrows = []
            for k in range(rng.randint(1, 2 * n)):
                i, j = sorted(rng.sample(range(n), 2))
                arrows.append((f"e{k}", perm[i], perm[j], False))
            q = IceQuiver.build([(v, False) for v in perm], arrows)
            run = gr.run_green(q, perm)  # the topological order is a source sequence
            assert run.sigma == {v: v for v in perm}, trial


class TestBoxProduct:
    def test_lengths_multiply(self):
        assert len(gr.boxtimes_sequence((1, 2), (3, 4, 5))) == 6
        assert gr.boxtimes_sequence((1,), (2,)) == [(1, 2)]

    def test_a3_a4_example(self):
        from quiverlab.icequiver import product

        q = IceQuiver.build(
            [(i, False) for i in (1, 2, 3)],
            [("a", 1, 2, False), ("b", 2, 3, False)],
        )
        qp = IceQuiver.build(
            [(i, False) for i in (1, 2, 3, 4)],
            [("c", 2, 1, False), ("d", 3, 2, False), ("e", 4, 3, False)],
        )
        seq = gr.boxtimes_sequence((3, 2, 1, 3, 2, 3), (4, 3, 2, 1))
        assert len(seq) == 24
        run = gr.run_green(product(q, qp, "triangle"), seq)
        star = {1: 3, 2: 2, 3: 1}
        assert run.sigma == {(i, j): (star[i], j) for i in (1, 2, 3) for j in (1, 2, 3, 4)}


class TestDualitySequence:
    def model(self, name="A2", base=(1, 2, 1), a=-5, b=0):
        d = cox.dynkin(name)
        w = iv.ExtendedWord(d, base)
        model, _ = ext.regular_embed(w, a, b)
        return model

    def test_a1_right_to_left(self):
        model = self.model("A1", (1,), -2, 0)
        seq = gr.duality_sequence(model.interval, model.coords, 1, 2)
        assert seq == [0, -1]

    def test_full_row_is_mgs_with_star_sigma(self):
        model = self.model()
        r = model.columns - 1
        seq = gr.duality_sequence(model.interval, model.coords, 1, r)
        defrost = forget_frozen(model.interval.quiver)
        run = gr.run_green(defrost, seq)
        assert run.sigma is not None
        coords = model.coords
        star = cox.weyl_data(model.diagram).star
        xi_b = model.xi_dict()
        by_coord = {c: v for v, c in coords.items()}
        for vtx, image in run.sigma.items():
            i, p = coords[vtx]
            s = (xi_b[i] - p) // 2
            assert image == by_coord[(star[i], xi_b[star[i]] - 2 * s)]

    def test_second_block_is_starred_copy(self):
        model = self.model()
        r = model.columns - 1
        one = gr.duality_sequence(model.interval, model.coords, 1, r)
        two = gr.duality_sequence(model.interval, model.coords, 2, r)
        assert two[: len(one)] == one
        star = cox.weyl_data(model.diagram).star
        coords = model.coords
        xi_b = model.xi_dict()
        by_coord = {c: v for v, c in coords.items()}
        for v1, v2 in zip(one, two[len(one) :]):
            i, p = coords[v1]
            s = (xi_b[i] - p) // 2
            assert v2 == by_coord[(star[i], xi_b[star[i]] - 2 * s)]

    def test_window_too_small(self):
        model = self.model()
        with pytest.raises(WindowTooSmall):
            gr.duality_sequence(model.interval, model.coords, 1, model.columns)
