import pytest

from quiverlab import seeds as sd
from quiverlab.errors import NotPointed, VertexFrozen
from quiverlab.fixtures import get_fixture
from quiverlab.laurent import LaurentPoly


def root_of(name):
    return sd.seed_from_quiver(get_fixture(name).quiver)


class TestMutateSeed:
    def test_u_to_f_exchange(self):
        s0 = root_of("u-to-f")
        s1 = sd.mutate_seed(s0, "u")
        # x_u' = (1 + x_f) / x_u
        want = LaurentPoly(2, {(-1, 0): 1, (-1, 1): 1})
        assert s1.variable("u") == want

    def test_involution(self):
        s0 = root_of("u-to-f")
        s2 = sd.mutate_seed(sd.mutate_seed(s0, "u"), "u")
        assert s2.cluster == s0.cluster
        assert s2.bhat == s0.bhat and s2.pair.lam == s0.pair.lam

    def test_pentagon(self):
        s = root_of("a2-free")
        cur = s
        for v in (1, 2, 1, 2, 1):
            cur = sd.mutate_seed(cur, v)
        assert set(cur.cluster) == set(s.cluster)
        assert cur.variable(1) == s.variable(2)
        assert cur.variable(2) == s.variable(1)

    def test_frozen_rejected(self):
        with pytest.raises(VertexFrozen):
            sd.mutate_seed(root_of("u-to-f"), "f")

    def test_laurent_phenomenon_walk(self):
        import random

        rng = random.Random(1)
        s = root_of("a2-interval")
        unfrozen = list(s.order[: s.n])
        for _ in range(25):  # InexactDivision would raise on any failure
            s = sd.mutate_seed(s, rng.choice(unfrozen))
        for x in s.cluster:
            for e in x.terms:
                assert all(e[j] >= 0 for j in range(s.n, s.m))


class TestDecompose:
    def test_initial_variables(self):
        s = root_of("u-to-f")
        for k, vid in enumerate(s.order):
            dec = sd.decompose(s.variable(vid), s)
            want = tuple(1 if i == k else 0 for i in range(s.m))
            assert dec.g == want and dec.f.is_one()

    def test_exchange_variable(self):
        s0 = root_of("u-to-f")
        s1 = sd.mutate_seed(s0, "u")
        dec = sd.decompose(s1.variable("u"), s0)
        assert dec.g == (-1, 1)
        assert dec.f == LaurentPoly(1, {(0,): 1, (1,): 1})

    def test_g_vector_additivity(self):
        s0 = root_of("a2-free")
        u = s0.variable(1) * s0.variable(2)
        dec = sd.decompose(u, s0)
        assert dec.g == (1, 1) and dec.f.is_one()

    def test_reconstruct_identity(self):
        s0 = root_of("a2-interval")
        s = s0
        for v in (-1, -2, -3, -1):
            s = sd.mutate_seed(s, v)
        for vid in s.order:
            u = s.variable(vid)
            dec = sd.decompose(u, s0)
            assert sd.reconstruct(dec, s0) == u

    def test_zero_not_pointed(self):
        s = root_of("u-to-f")
        with pytest.raises(NotPointed):
            sd.decompose(LaurentPoly.zero(2), s)

    def test_decompose_in_non_root_seed(self):
        s0 = root_of("a2-free")
        s1 = sd.mutate_seed(s0, 1)
        # in seed s1 the variable at 1 is that seed's own first variable
        dec = sd.decompose(s1.variable(1), s1)
        assert dec.g == (1, 0) and dec.f.is_one()


class TestInvariants:
    def test_same_seed_variables_give_lambda(self):
        s = root_of("a2-interval")
        for i, vi in enumerate(s.order):
            for j, vj in enumerate(s.order):
                got = sd.tropical_invariant(s.variable(vi), s.variable(vj), s)
                assert got == s.pair.lam[i, j]

    def test_u_to_f_values(self):
        s0 = root_of("u-to-f")
        s1 = sd.mutate_seed(s0, "u")
        xu2 = s1.variable("u")
        assert sd.tropical_invariant(xu2, s0.variable("f"), s0) == -2
        assert sd.tropical_invariant(s0.variable("f"), xu2, s0) == 2
        assert sd.tropical_invariant(xu2, s0.variable("u"), s0) == 0
        assert sd.tropical_invariant(s0.variable("u"), xu2, s0) == 2
        assert sd.f_invariant(xu2, s0.variable("u"), s0) == 2

    def test_f_invariant_zero_iff_same_seed_small(self):
        s0 = root_of("u-to-f")
        s1 = sd.mutate_seed(s0, "u")
        assert sd.f_invariant(s0.variable("u"), s0.variable("f"), s0) == 0
        assert sd.f_invariant(s1.variable("u"), s0.variable("f"), s0) == 0
        assert sd.f_invariant(s1.variable("u"), s0.variable("u"), s0) == 2

    def test_symmetry(self):
        s0 = root_of("a2-free")
        s1 = sd.mutate_seed(s0, 1)
        u, v = s1.variable(1), s0.variable(2)
        assert sd.f_invariant(u, v, s0) == sd.f_invariant(v, u, s0)

    def test_seed_independence_three_seeds(self):
        s0 = root_of("a2-free")
        s1 = sd.mutate_seed(s0, 1)
        s2 = sd.mutate_seed(s1, 2)
        u = s1.variable(1)
        v = s2.variable(2)
        vals = {sd.tropical_invariant(u, v, t) for t in (s0, s1, s2)}
        assert len(vals) == 1
