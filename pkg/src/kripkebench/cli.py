"""Command-line interface.

Subcommands: build (frame constructors), valid (validity / refutation with
witness), pmorph (check or find p-morphisms), freealg, blocks, beta, and
check (the registry runner).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructions as C
from .algebra import beta_formula, block_system, free_algebra_count
from .checks import DEFAULT_SEED, report_json, run_all, run_check
from .errors import BudgetExceeded, CapExceeded, KripkebenchError
from .formulas import parse, print_formula
from .frames import (Frame, bitstring, bits_of, kripke_of, load_frame,
                     store_frame)
from .morphisms import (check_pmorphism, find_pmorphism, load_worldmap,
                        store_worldmap)
from .semantics import DEFAULT_BUDGET, Model, refutes_witness


def _read_frame(path: str):
    with open(path, "rb") as fh:
        return load_frame(fh.read())


def _read_valuation(path: str, n: int) -> dict[int, int]:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    out = {}
    for key, bstr in doc.items():
        if not key.startswith("p"):
            raise KripkebenchError(f"valuation key {key!r} is not a variable")
        out[int(key[1:])] = bits_of(bstr)
    return out


def _emit(data: bytes, out_path: str | None):
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode("utf-8"))
        if not data.endswith(b"\n"):
            sys.stdout.write("\n")


def _cmd_build(args) -> int:
    name = args.family
    if name == "tack":
        frame = C.tack(args.kind, args.m)
    elif name == "match":
        frame = C.match_frame(args.axis, args.kind, args.m)
    elif name == "rect":
        frame = C.rect(args.a, args.b)
    elif name == "lintgrz":
        frame = C.lintgrz(args.m)
    elif name == "univchain":
        frame = C.univ_chain(args.m)
    elif name == "singleton":
        frame = C.singleton()
    elif name == "chain":
        frame = C.lift(C.chain(args.m))
    elif name == "cluster":
        frame = C.lift(C.cluster(args.m))
    elif name == "tackpre":
        frame = C.lift(C.tack_pre(args.m))
    elif name == "product":
        left, right = _read_frame(args.left), _read_frame(args.right)
        for f in (left, right):
            if not isinstance(f, Frame):
                raise KripkebenchError("product factors must be Kripke frames")
        from .frames import UniFrame
        u1 = UniFrame(left.n, left.r1)
        u2 = UniFrame(right.n, right.r1)
        frame = C.product(u1, u2)
    elif name == "sum":
        frame = C.ordered_sum(kripke_of(_read_frame(args.left)),
                              kripke_of(_read_frame(args.right)), args.kind)
    elif name == "tensesum":
        frame = C.tense_sum(kripke_of(_read_frame(args.left)),
                            kripke_of(_read_frame(args.right)))
    else:  # pragma: no cover - argparse restricts choices
        raise KripkebenchError(f"unknown family {name}")
    _emit(store_frame(frame), args.output)
    return 0


def _cmd_valid(args) -> int:
    g = _read_frame(args.frame)
    f = parse(args.formula)
    try:
        witness = refutes_witness(g, f, budget=args.budget)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 2
    if witness is None:
        print("valid")
        return 0
    n = kripke_of(g).n
    doc = {"valuation": {f"p{v}": bitstring(mask, n)
                         for v, mask in witness.valuation},
           "world": witness.world}
    print(json.dumps(doc))
    return 1


def _cmd_pmorph(args) -> int:
    g, h = _read_frame(args.src), _read_frame(args.dst)
    if args.action == "check":
        if not args.map:
            print("pmorph check needs --map", file=sys.stderr)
            return 2
        with open(args.map, "rb") as fh:
            mapping = load_worldmap(fh.read())
        violation = check_pmorphism(g, h, mapping)
        if violation is None:
            print("ok")
            return 0
        print(str(violation))
        return 1
    try:
        found = find_pmorphism(g, h, budget=args.budget)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 2
    if found is None:
        print("none")
        return 1
    _emit(store_worldmap(found), args.output)
    return 0


def _cmd_freealg(args) -> int:
    frames = [kripke_of(_read_frame(p)) for p in args.frames.split(",")]
    try:
        count = free_algebra_count(frames, args.k, cap=args.cap,
                                   budget=args.budget)
    except CapExceeded as e:
        print(f"cap exceeded: exact count {e.last_size}", file=sys.stderr)
        return 2
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 2
    print(count)
    return 0


def _cmd_blocks(args) -> int:
    g = _read_frame(args.frame)
    frame = kripke_of(g)
    model = Model(g, _read_valuation(args.valuation, frame.n))
    system = block_system(model, args.max_layers)
    doc = {
        "n": frame.n,
        "layers": [[bitstring(b, frame.n) for b in layer]
                   for layer in system.layers],
        "stabilization": system.stabilization,
    }
    print(json.dumps(doc))
    return 0


def _cmd_beta(args) -> int:
    g = _read_frame(args.frame)
    frame = kripke_of(g)
    model = Model(g, _read_valuation(args.valuation, frame.n))
    cert = beta_formula(model, args.r)
    doc = {
        "world": cert.world,
        "beta": print_formula(cert.beta),
        "depth": cert.depth,
        "transcript": list(cert.transcript),
    }
    print(json.dumps(doc))
    return 0


def _cmd_check(args) -> int:
    overrides = {}
    if args.budget is not None:
        overrides = {cid: {"budget": args.budget} for cid in ("C1", "C2", "C3",
                     "C4", "C5", "C7", "C8", "C11", "C12")}
    if args.all:
        records = run_all(seed=args.seed, params=overrides)
    else:
        records = [run_check(args.id, overrides.get(args.id), seed=args.seed)]
    if args.json:
        sys.stdout.write(report_json(records).decode("utf-8"))
    else:
        for r in records:
            print(f"{r.id}: {r.status}")
            if args.verbose:
                for line in r.transcript:
                    print(f"  {line}")
    return 0 if all(r.status != "fail" for r in records) else 1


def main(argv=None) -> int:
    top = argparse.ArgumentParser(prog="kripkebench")
    sub = top.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a frame and write its JSON")
    b.add_argument("family", choices=["tack", "match", "rect", "lintgrz",
                                      "univchain", "singleton", "chain",
                                      "cluster", "tackpre", "product", "sum",
                                      "tensesum"])
    b.add_argument("--kind", default="both", choices=["both", "1", "2"])
    b.add_argument("--axis", type=int, default=1, choices=[1, 2])
    b.add_argument("-m", type=int, default=1)
    b.add_argument("-a", type=int, default=1)
    b.add_argument("-b", type=int, default=1)
    b.add_argument("--left", help="left/first operand frame JSON path")
    b.add_argument("--right", help="right/second operand frame JSON path")
    b.add_argument("-o", "--output")
    b.set_defaults(fn=_cmd_build)

    v = sub.add_parser("valid", help="validity; exit 0 valid, 1 refuted, 2 budget")
    v.add_argument("--frame", required=True)
    v.add_argument("--formula", required=True)
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    v.set_defaults(fn=_cmd_valid)

    p = sub.add_parser("pmorph", help="check or find p-morphisms")
    p.add_argument("action", choices=["check", "find"])
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--map")
    p.add_argument("--budget", type=int, default=1 << 20)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_pmorph)

    fa = sub.add_parser("freealg", help="count inequivalent k-formulas")
    fa.add_argument("--frames", required=True, help="comma-separated JSON paths")
    fa.add_argument("-k", type=int, required=True)
    fa.add_argument("--cap", type=int, default=1_000_000)
    fa.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    fa.set_defaults(fn=_cmd_freealg)

    bl = sub.add_parser("blocks", help="layered block system of a model")
    bl.add_argument("--frame", required=True)
    bl.add_argument("--valuation", required=True)
    bl.add_argument("--max-layers", type=int, default=None)
    bl.set_defaults(fn=_cmd_blocks)

    be = sub.add_parser("beta", help="point-definability certificate")
    be.add_argument("--frame", required=True)
    be.add_argument("--valuation", required=True)
    be.add_argument("-r", type=int, required=True)
    be.set_defaults(fn=_cmd_beta)

    ck = sub.add_parser("check", help="run registry checks")
    group = ck.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", action="store_true")
    group.add_argument("--id")
    ck.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ck.add_argument("--budget", type=int, default=None)
    ck.add_argument("--json", action="store_true")
    ck.add_argument("-v", "--verbose", action="store_true")
    ck.set_defaults(fn=_cmd_check)

    args = top.parse_args(argv)
    try:
        return args.fn(args)
    except KripkebenchError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
