"""Command-line entry points.

Subcommands: build, mutate, pair, seed, green, ext, lambda-matrix, verify,
serve.  Quivers travel as JSON files in the documented schema; matrices
print as aligned integer blocks.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import coxeter as cox
from . import extensions as ext
from . import green as gr
from . import interval as iv
from . import seeds as sd
from .compatible import build_pair
from .fixtures import fixture_names, get_fixture
from .icequiver import IceQuiver, mutate_fz
from .matrices import bareiss_det


def _load_quiver(args) -> IceQuiver:
    if getattr(args, "fixture", None):
        return get_fixture(args.fixture).quiver
    with open(args.quiver) as fh:
        return IceQuiver.from_json(json.load(fh))


def _word_of(args) -> iv.ExtendedWord:
    d = cox.dynkin(args.type)
    base = tuple(int(x) for x in args.word.split(","))
    return iv.ExtendedWord(d, base)


def _emit(args, doc: str, path_attr="out"):
    path = getattr(args, path_attr, None)
    if path:
        with open(path, "w") as fh:
            fh.write(doc)
    else:
        print(doc)


def cmd_build(args):
    w = _word_of(args)
    itv = iv.build_interval(w, args.a, args.b)
    doc = {
        "quiver": itv.quiver.to_json(),
        "potential": itv.potential.to_json(),
        "frozen": itv.quiver.frozen_ids(),
    }
    _emit(args, json.dumps(doc, indent=2))
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(itv.quiver.to_dot())


def cmd_mutate(args):
    q = _load_quiver(args)
    for raw in args.at.split(","):
        vid = int(raw) if raw.lstrip("-").isdigit() else raw
        q = mutate_fz(q, vid)
    _emit(args, json.dumps(q.to_json(), indent=2))


def cmd_pair(args):
    q = _load_quiver(args)
    pair, bhat = build_pair(q)
    print("order:", q.default_order())
    print("bhat:")
    print(bhat.pretty())
    print("det:", bareiss_det(bhat))
    print("lambda:")
    print(pair.lam.pretty())
    print("d:", pair.d)


def cmd_seed(args):
    q = _load_quiver(args)
    s = sd.seed_from_quiver(q)
    root = s
    if args.at:
        for raw in args.at.split(","):
            vid = int(raw) if raw.lstrip("-").isdigit() else raw
            s = sd.mutate_seed(s, vid)
    names = [str(v) for v in s.order]
    print("trail:", list(s.trail))
    for vid in s.order:
        dec = sd.decompose(s.variable(vid), root)
        print(f"x[{vid}] = {s.variable(vid).format(names)}   g = {list(dec.g)}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(s.to_json(), fh, indent=2)


def cmd_green(args):
    q = _load_quiver(args)
    seq = []
    for raw in args.seq.split(","):
        seq.append(int(raw) if raw.lstrip("-").isdigit() else raw)
    from .icequiver import forget_frozen, frame

    base = forget_frozen(q) if q.frozen_ids() else q
    current = frame(base)
    for k, v in enumerate(seq, 1):
        cols = gr.colors_of(current)
        print(f"step {k}: mutate {v}  colors {cols}")
        if cols.get(v) != "green":
            print(f"vertex {v} is not green; aborting")
            return 1
        current = mutate_fz(current, v)
    cols = gr.colors_of(current)
    print("final colors:", cols)
    if all(c == "red" for c in cols.values()):
        sigma = gr.end_permutation(current, base)
        print("maximal green sequence; sigma =", sigma)
    return 0


def cmd_ext(args):
    w = _word_of(args)
    model, a2 = ext.regular_embed(w, args.a, args.b)
    ids = model.interval.quiver.vertex_ids()
    if args.pairs != "all":
        s, t = (int(x) for x in args.pairs.split(","))
        pairs = [(s, t)]
    else:
        pairs = [(s, t) for s in ids for t in ids]
    doc = {
        "window": [a2, args.b],
        "columns": model.columns,
        "table": [
            {"s": s, "t": t, "dims": {str(k): v for k, v in ext.ext_dims(model, s, t).items()}}
            for s, t in pairs
        ],
    }
    _emit(args, json.dumps(doc, indent=2))


def cmd_lambda_matrix(args):
    w = _word_of(args)
    model, a2 = ext.regular_embed(w, args.a, args.b)
    order = model.interval.quiver.default_order()
    pair, _ = build_pair(model.interval.quiver, order)
    bm = ext.bracket_matrix(model, order)
    print("window:", [a2, args.b], "order:", order)
    print("homological lambda (bracket matrix):")
    print(bm.pretty())
    print("matrix-formula lambda:")
    print(pair.lam.pretty())
    diff = bm - pair.lam
    if any(any(row) for row in diff.entries):
        print("DIFF:")
        print(diff.pretty())
        return 1
    print("matrices agree")
    return 0


def cmd_verify(args):
    from .verify import verify_suite

    rep = verify_suite(args.scope)
    for c in rep["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        print(f"{mark} {c['name']} ({c['seconds']}s)")
        if not c["passed"]:
            print("    ", json.dumps(c["detail"]))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rep, fh, indent=2)
    return 0 if rep.get("passed") else 1


def cmd_serve(args):
    import uvicorn

    from .service import create_app

    app = create_app()
    if args.ui:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=args.ui, html=True), name="ui")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


def main(argv=None):
    top = argparse.ArgumentParser(prog="quiverlab")
    sub = top.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("build", help="build an interval ice quiver with potential")
    p.add_argument("action", nargs="?", choices=["build"], help="optional verb (interval build ...)")
    p.add_argument("--type", required=True)
    p.add_argument("--word", required=True, help="comma-separated reduced word for w0")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--dot")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("mutate", help="extended FZ mutation of a quiver file")
    p.add_argument("--quiver")
    p.add_argument("--fixture", choices=fixture_names())
    p.add_argument("--at", required=True, help="comma-separated vertex ids")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_mutate)

    p = sub.add_parser("pair", help="Euler matrix and compatible pair")
    p.add_argument("--quiver")
    p.add_argument("--fixture", choices=fixture_names())
    p.set_defaults(fn=cmd_pair)

    p = sub.add_parser("seed", help="mutate a seed and print cluster variables")
    p.add_argument("action", nargs="?", choices=["mutate"], help="optional verb (seed mutate ...)")
    p.add_argument("--quiver")
    p.add_argument("--fixture", choices=fixture_names())
    p.add_argument("--at", default="", help="comma-separated mutation sequence")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_seed)

    p = sub.add_parser("green", help="run a green sequence on the framed quiver")
    p.add_argument("action", nargs="?", choices=["run"], help="optional verb (green run ...)")
    p.add_argument("--quiver")
    p.add_argument("--fixture", choices=fixture_names())
    p.add_argument("--seq", required=True)
    p.set_defaults(fn=cmd_green)

    p = sub.add_parser("ext", help="graded Ext table over a regular window")
    p.add_argument("--type", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--pairs", default="all")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_ext)

    p = sub.add_parser("lambda-matrix", help="bracket matrix vs matrix-formula lambda")
    p.add_argument("--type", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(fn=cmd_lambda_matrix)

    p = sub.add_parser("verify", help="run the cross-check suite")
    p.add_argument("--scope", default="all")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("serve", help="run the explorer HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8418)
    p.add_argument("--ui", help="directory with the built explorer UI to serve at /")
    p.set_defaults(fn=cmd_serve)

    args = top.parse_args(argv)
    rc = args.fn(args)
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
