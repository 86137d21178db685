"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for bad
arguments or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import formats, generate, hypergraph, lemmas, report, solver
from .decomposition import to_text
from .embedding import dual, euler_genus, is_orientable, trace_faces
from .errors import BranchDualError, FormatError

LEMMA_KIND = {
    "obs-conn": "connected",
    "remove-loops": "connected",
    "contract": "connected",
    "remove": "connected",
    "bridge-sep-genus": "connected",
    "sep-bridge-genus": "connected",
    "no-bridge-dual": "bridgeless",
    "reduction": "bridgeless",
}


def _load(path):
    try:
        return formats.read_instance(path)
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from exc


def _print_json(obj):
    print(json.dumps(obj, indent=1, sort_keys=True))


# -- simple subcommands -------------------------------------------------------


def cmd_genus(args) -> int:
    obj = _load(args.file)
    G = obj.incidence if hasattr(obj, "centers") else obj
    _print_json(
        {
            "genus": euler_genus(G),
            "orientable": is_orientable(G),
            "vertices": len(G.vertices),
            "edges": len(G.edges),
            "faces": len(trace_faces(G)),
        }
    )
    return 0


def cmd_dual(args) -> int:
    obj = _load(args.file)
    if hasattr(obj, "centers"):
        out = hypergraph.hyper_dual(obj).dual
    else:
        out = dual(obj).dual_graph
    text = formats.emit(out, args.format, header=f"dual of {Path(args.file).name}")
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bw(args) -> int:
    obj = _load(args.file)
    if hasattr(obj, "centers"):
        if args.measure != "delta" or args.connected or not args.exact:
            raise FormatError("hypergraphs support only exact delta branchwidth")
        res = hypergraph.hyper_bw(obj)
    else:
        res = solver.solve(obj, args.measure, exact=args.exact, connected=args.connected)
    _print_json(
        {
            "measure": args.measure,
            "connected": args.connected,
            "exact": args.exact,
            "value": res.value,
            "tree": to_text(res.tree),
        }
    )
    return 0


def cmd_gen(args) -> int:
    c = generate.Campaign(args.seed, args.count, args.max_edges, args.max_genus, kind=args.kind)
    items = generate.instances(c)
    ext = "json" if args.format == "json" else ("hemb" if args.kind == "hypergraph" else "emb")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for inst in items:
            (out / f"{inst.index:04d}.{ext}").write_text(formats.emit(inst.graph, args.format, inst.name))
    else:
        for inst in items:
            sys.stdout.write(formats.emit(inst.graph, args.format, f"{inst.index} {inst.name}"))
            if args.format != "json":
                sys.stdout.write("\n")
    return 0


# -- verification campaigns ------------------------------------------------------


def _verify_instance(job):
    """Worker: (target, index, instance, campaign seed, attempts) -> report dicts."""
    target, index, obj, seed, attempts, reduction = job
    if target == "theorem1":
        reps = [lemmas.theorem1_check(obj, reduction=reduction)]
    elif target == "theorem2":
        reps = [hypergraph.theorem2_check(obj)]
    else:
        rng = generate.make_rng(seed ^ 0x5EED, index)
        reps = lemmas.sample_reports(target, obj, rng, attempts)
    return [r.with_seed(index).to_json() for r in reps]


def _targets(args) -> list:
    if args.theorem:
        return [f"theorem{args.theorem}"]
    if args.lemma == "all":
        return list(lemmas.LEMMA_NAMES)
    return [args.lemma]


def cmd_verify(args) -> int:
    targets = _targets(args)
    jobs = []
    written = {}
    for target in targets:
        if target == "theorem2":
            kind = "hypergraph"
        elif target == "theorem1":
            kind = "bridgeless"
        else:
            kind = LEMMA_KIND[target]
        c = generate.Campaign(args.seed, args.count, args.max_edges, args.max_genus, kind=kind)
        for inst in generate.instances(c):
            jobs.append((target, inst.index, inst.graph, args.seed, args.attempts, args.reduction))
            written[(kind, inst.index)] = inst
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_verify_instance, jobs))
    else:
        results = [_verify_instance(j) for j in jobs]
    reps = [report.VerificationReport.from_json(d) for batch in results for d in batch]

    campaign = {
        "seed": args.seed,
        "count": args.count,
        "max_edges": args.max_edges,
        "max_genus": args.max_genus,
        "targets": targets,
    }
    text = report.dumps_csv(reps) if args.format == "csv" else report.dumps_json(reps, campaign)
    if args.out:
        out = Path(args.out)
        (out / "instances").mkdir(parents=True, exist_ok=True)
        for (kind, index), inst in sorted(written.items()):
            ext = "hemb" if kind == "hypergraph" else "emb"
            name = f"{kind}-{index:04d}.{ext}"
            (out / "instances" / name).write_text(formats.emit(inst.graph, "emb", inst.name))
        (out / f"report.{args.format}").write_text(text)
    sys.stdout.write(text)
    return 0 if all(r.passed for r in reps) else 1


# -- argument parsing ------------------------------------------------------------


def _campaign_args(p, count=10):
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=count)
    p.add_argument("--max-edges", type=int, default=12)
    p.add_argument("--max-genus", type=int, default=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="branchdual", description="Branchwidth of embedded graphs, hypergraphs and their duals."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("genus", help="Euler genus and face count of an embedding")
    p.add_argument("file")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("dual", help="write the dual embedding")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("emb", "json"), default="emb")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("bw", help="branchwidth under delta or mu")
    p.add_argument("file")
    p.add_argument("--measure", choices=("delta", "mu"), default="delta")
    p.add_argument("--connected", action="store_true", help="restrict to connected decompositions")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_true", default=True)
    mode.add_argument("--heuristic", dest="exact", action="store_false")
    p.set_defaults(func=cmd_bw)

    p = sub.add_parser("verify", help="run a seeded verification campaign")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--lemma", choices=lemmas.LEMMA_NAMES + ("all",))
    which.add_argument("--theorem", type=int, choices=(1, 2))
    _campaign_args(p)
    p.add_argument("--attempts", type=int, default=20, help="random (F, e) draws per instance")
    p.add_argument("--reduction", action="store_true", help="also trace every split (theorem 1)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="directory for instance files and the aggregate report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit seeded instances")
    _campaign_args(p, count=1)
    p.add_argument("--kind", choices=generate.GRAPH_KINDS + ("hypergraph",), default="bridgeless")
    p.add_argument("--format", choices=("emb", "json"), default="emb")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BranchDualError as exc:
        print(f"branchdual: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
