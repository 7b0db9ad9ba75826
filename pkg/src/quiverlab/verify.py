"""Cross-check suite: every central identity is recomputed through two
independent pipelines and compared exactly.  Failures are data, not
exceptions; each check reports a payload suitable for debugging."""
from __future__ import annotations

import time
import warnings

from . import coxeter as cox
from . import extensions as ext
from . import green as gr
from . import interval as iv
from . import seeds as sd
from .compatible import build_pair
from .fixtures import get_fixture
from .icequiver import IceQuiver, mutate_fz, product


def _check(report, name, fn):
    t0 = time.time()
    try:
        detail = fn()
        report["checks"].append(
            {"name": name, "passed": True, "detail": detail, "seconds": round(time.time() - t0, 3)}
        )
    except Exception as exc:  # noqa: BLE001 - failures are data here
        report["checks"].append(
            {
                "name": name,
                "passed": False,
                "detail": {"error": type(exc).__name__, "message": str(exc)},
                "seconds": round(time.time() - t0, 3),
            }
        )


def _a1_checks(report):
    d = cox.dynkin("A1")
    w = iv.ExtendedWord(d, (1,))

    def chain():
        model, _ = ext.regular_embed(w, -1, 0)
        pair, bhat = build_pair(model.interval.quiver)
        assert bhat.entries == ((0, 1), (-1, 1))
        assert pair.lam.entries == ((0, 2), (-2, 0))
        table = {
            (s, t): ext.ext_dims(model, s, t) for s in (0, -1) for t in (0, -1)
        }
        assert table[(0, -1)] == {0: 1}
        assert table[(-1, 0)] == {-1: 1}
        assert table[(-1, -1)] == {0: 1, -1: 1}
        assert table[(0, 0)] == {0: 1}
        assert ext.bracket(model, 0, -1) == 2 == pair.lam[0, 1]
        ext.euler_matrix_check(model)
        return {"bhat": bhat.entries, "lambda": pair.lam.entries}

    _check(report, "a1-worked-chain", chain)

    def routes():
        model, _ = ext.regular_embed(w, -1, 0)
        out = {}
        for v in (0, -1):
            for t in (0, -1):
                for n in (1, 2, 3):
                    ra, rb = ext.d_invariant_dual(model, v, t, n)
                    out[f"d({v},{t},{n})"] = ra
        return out

    _check(report, "a1-pairing-routes", routes)


def _interval_checks(report, fixture_name):
    fx = get_fixture(fixture_name)
    w, a, b = fx.word, fx.a, fx.b

    def lambda_matrix():
        model, a2 = ext.regular_embed(w, a, b)
        pair, _ = build_pair(model.interval.quiver)
        bm = ext.bracket_matrix(model)
        if bm != pair.lam:
            raise AssertionError(f"bracket matrix != lambda on window [{a2},{b}]")
        return {"window": [a2, b], "size": pair.m}

    _check(report, f"{fixture_name}-lambda-matrix", lambda_matrix)

    def euler_inverse():
        model, _ = ext.regular_embed(w, a, b)
        ext.euler_matrix_check(model)
        return "chi = bhat^-T"

    _check(report, f"{fixture_name}-euler-inverse", euler_inverse)

    def pair_mutation():
        import random

        from .compatible import mutate_pair

        rng = random.Random(11)
        base = iv.build_interval(w, a, b).quiver
        for run in range(20):
            q = base
            pair, bhat = build_pair(q)
            for _ in range(rng.randint(1, 6)):
                legal = [
                    v
                    for v in q.unfrozen_ids()
                    if not any(q.arrows_between(x.dst, v) for x in q.arrows_from(v))
                ]
                if not legal:
                    break
                v = rng.choice(legal)
                idx = q.default_order().index(v)
                q2 = mutate_fz(q, v)
                pair2, bhat2 = build_pair(q2)
                pair_m, bhat_m = mutate_pair(pair, bhat, idx)
                if (bhat2, pair2.lam) != (bhat_m, pair_m.lam):
                    raise AssertionError(f"pair mutation mismatch at {v} (run {run})")
                q, pair, bhat = q2, pair_m, bhat_m
        return "E_v route == rebuild route on random walks"

    _check(report, f"{fixture_name}-pair-mutation", pair_mutation)

    def a_independence():
        model1, a1 = ext.regular_embed(w, a, b)
        model2, _ = ext.regular_embed(w, a1 - 1, b)
        shared = model1.interval.quiver.vertex_ids()
        for s in shared:
            for t in shared:
                if ext.ext_dims(model1, s, t) != ext.ext_dims(model2, s, t):
                    raise AssertionError(f"ext differs at ({s},{t})")
        return {"windows": [model1.interval.a, model2.interval.a]}

    _check(report, f"{fixture_name}-ext-a-independence", a_independence)


def _move_checks(report):
    d = cox.dynkin("A3")

    def moves():
        found = []
        for base, (a, b) in (((1, 2, 3, 2, 1, 2), (-2, 6)), ((3, 1, 2, 3, 1, 2), (-1, 6))):
            w = iv.ExtendedWord(d, base)
            for s in range(a, b + 1):
                la, lb = w.letter(s), w.letter(s + 1)
                if a <= s < b and la != lb and not d.adjacent(la, lb):
                    w2 = iv.apply_move(w, "commutation", s)
                    iv.verify_move(w, w2, "commutation", s, a, b)
                    found.append(["commutation", s])
                if a < s < b and d.adjacent(la, lb) and w.letter(s - 1) == lb:
                    w2 = iv.apply_move(w, "braid", s)
                    iv.verify_move(w, w2, "braid", s, a, b)
                    found.append(["braid", s])
        if not found:
            raise AssertionError("no legal move positions found")
        return {"verified": found}

    _check(report, "a3-moves", moves)


def _green_checks(report):
    def source_and_sink():
        out = {}
        for type_name in ("A1", "A2", "A3", "A4", "D4"):
            d = cox.dynkin(type_name)
            xi = cox.canonical_height(d)
            wd = cox.weyl_data(d)
            q = IceQuiver.build(
                [(i, False) for i in d.vertices],
                [
                    (f"e{i}-{j}", i, j, False)
                    for (i, j) in cox.orientation_of(d, xi)
                ],
            )
            src = cox.source_ordering(d, xi)
            run = gr.run_green(q, src)
            assert run.sigma == {i: i for i in d.vertices}, f"{type_name}: source sigma != id"
            sink = cox.sink_word(d, xi)
            run = gr.run_green(q, sink)
            assert run.sigma == wd.star, f"{type_name}: sink sigma != star"
            out[type_name] = {"source": src, "sink": list(sink)}
        return out

    _check(report, "green-source-sink", source_and_sink)

    def box_product():
        q = IceQuiver.build(
            [(i, False) for i in (1, 2, 3)],
            [("a", 1, 2, False), ("b", 2, 3, False)],
        )
        qp = IceQuiver.build(
            [(i, False) for i in (1, 2, 3, 4)],
            [("c", 2, 1, False), ("d", 3, 2, False), ("e", 4, 3, False)],
        )
        prod = product(q, qp, "triangle")
        seq = gr.boxtimes_sequence((3, 2, 1, 3, 2, 3), (4, 3, 2, 1))
        assert len(seq) == 24
        run = gr.run_green(prod, seq)
        star = {1: 3, 2: 2, 3: 1}
        want = {(i, j): (star[i], j) for i in (1, 2, 3) for j in (1, 2, 3, 4)}
        assert run.sigma == want, "box sigma != star x id"
        return "24-step box sequence maximal, sigma = star x id"

    _check(report, "green-box-product", box_product)


def _seed_checks(report):
    def pentagon():
        fx = get_fixture("a2-free")
        s = sd.seed_from_quiver(fx.quiver)
        cur = s
        for v in (1, 2, 1, 2, 1):
            cur = sd.mutate_seed(cur, v)
        assert set(cur.cluster) == set(s.cluster), "pentagon recurrence failed"
        return "mutations 1,2,1,2,1 restore the A2 cluster up to swap"

    _check(report, "seed-pentagon", pentagon)

    def invariants():
        fx = get_fixture("u-to-f")
        s0 = sd.seed_from_quiver(fx.quiver)
        s1 = sd.mutate_seed(s0, "u")
        xu2 = s1.variable("u")
        xf = s0.variable("f")
        xu = s0.variable("u")
        assert sd.tropical_invariant(xu2, xf, s0) == -2
        assert sd.tropical_invariant(xf, xu2, s0) == 2
        assert sd.f_invariant(xu2, xu, s0) == 2
        assert sd.f_invariant(xu2, xf, s0) == 0
        # seed independence
        assert sd.tropical_invariant(xu2, xf, s1) == -2
        return {"trop(u',f)": -2, "F(u',u)": 2}

    _check(report, "seed-invariants", invariants)


SCOPES = {
    "A1": [_a1_checks, _seed_checks],
    "A2": [lambda r: _interval_checks(r, "a2-interval")],
    "A3-adapted": [lambda r: _interval_checks(r, "a3-adapted")],
    "A3-moves": [_move_checks],
    "green": [_green_checks],
}


def verify_suite(scope: str = "all", parallel: bool = True) -> dict:
    """Run the named identity checks for a fixture scope.

    Parts run on a small thread pool (the checks are pure); each part
    appends to its own report and the reports are merged in scope order.
    """
    report = {"scope": scope, "checks": []}
    if scope == "all":
        parts = [fn for fns in SCOPES.values() for fn in fns]
    elif scope in SCOPES:
        parts = SCOPES[scope]
    else:
        warnings.warn(f"unknown scope {scope!r}; nothing to verify")
        report["warning"] = f"unknown scope {scope!r}"
        return report
    if parallel and len(parts) > 1:
        from concurrent.futures import ThreadPoolExecutor

        subreports = [{"checks": []} for _ in parts]
        with ThreadPoolExecutor(max_workers=4) as pool:
            list(pool.map(lambda pair: pair[0](pair[1]), zip(parts, subreports)))
        for sub in subreports:
            report["checks"].extend(sub["checks"])
    else:
        for fn in parts:
            fn(report)
    report["passed"] = all(c["passed"] for c in report["checks"])
    return report
