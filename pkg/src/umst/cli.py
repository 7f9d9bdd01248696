"""Command-line front end: ``umst run|opt|ratio|gen|batch|witness-check``."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .area import format_weight
from .errors import (
    InconsistentReveal,
    InstanceTooLarge,
    MalformedArea,
    MalformedGraph,
    NotARealization,
    UMSTError,
)
from .generators import (
    gadget_adversary,
    gadget_instance,
    gen_gadget_path,
    gen_half_open_cycle,
    gen_random,
    gen_random_vertex,
    gen_star,
    gen_vertex_lb,
)
from .graph import Instance, graph_from_json
from .oracle import is_witness_set, minimal_verifying_sets, opt_updates
from .ured import run_u_red
from .vertex import VertexInstance, run_vertex_u_red, vertex_instance_from_json, vertex_opt

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_TRUTH = 3
EXIT_ORACLE = 4
EXIT_BOUND = 5

FAMILIES = ("gadget-path", "star", "half-open-cycle", "vertex-lb", "random", "random-vertex")


class CLIError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


@dataclass
class Report:
    instance: str
    model: str
    updates: int
    opt: int | None
    ratio: float | None
    runtime: float
    event_log: str | None = None

    @property
    def status(self) -> str:
        if self.opt == 0 and self.updates == 0:
            return "verified-without-updates"
        return "ok"

    def line(self) -> str:
        ratio = "-" if self.ratio is None else f"{self.ratio:.3f}"
        opt = "-" if self.opt is None else str(self.opt)
        text = (f"{self.instance:<24} model={self.model:<6} updates={self.updates:<4} "
                f"opt={opt:<4} ratio={ratio:<7} time={self.runtime:.3f}s")
        if self.status != "ok":
            text += f" {self.status}"
        return text

    def to_json(self) -> str:
        data = asdict(self)
        data["status"] = self.status
        return json.dumps(data)


def load_any(path) -> Instance | VertexInstance:
    """Read an edge or vertex instance file, mapping failures to exit codes."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CLIError(f"{path}: {exc.strerror}", EXIT_INPUT) from exc
    except json.JSONDecodeError as exc:
        raise CLIError(f"{path}: invalid JSON ({exc.msg})", EXIT_INPUT) from exc
    try:
        if isinstance(data, dict) and data.get("model") == "vertex":
            return vertex_instance_from_json(data)
        g, truth = graph_from_json(data)
        if truth is None:
            raise MalformedGraph("no true weights in instance file")
        return Instance(g, truth)
    except (NotARealization, InconsistentReveal) as exc:
        raise CLIError(f"{path}: {exc}", EXIT_TRUTH) from exc
    except (MalformedGraph, MalformedArea, ValueError, TypeError) as exc:
        raise CLIError(f"{path}: {exc}", EXIT_INPUT) from exc


def _model(inst) -> str:
    return "vertex" if isinstance(inst, VertexInstance) else "edge"


def _run(inst):
    if isinstance(inst, VertexInstance):
        return run_vertex_u_red(inst)
    return run_u_red(inst)


def _opt(inst, bound=None) -> int:
    try:
        if isinstance(inst, VertexInstance):
            return vertex_opt(inst, bound=bound)
        return opt_updates(inst, bound=bound)
    except InstanceTooLarge as exc:
        raise CLIError(str(exc), EXIT_ORACLE) from exc


def _write_log(result, path) -> None:
    with open(path, "w") as fh:
        for line in result.event_lines():
            fh.write(line + "\n")


def make_report(path, *, with_opt: bool, bound=None, log=None) -> Report:
    inst = load_any(path)
    start = time.perf_counter()
    result = _run(inst)
    opt = _opt(inst, bound) if with_opt else None
    runtime = time.perf_counter() - start
    if log:
        _write_log(result, log)
    ratio = None if opt is None else result.updates / max(opt, 1)
    return Report(Path(path).name, _model(inst), result.updates, opt, ratio, runtime, log)


def cmd_run(args) -> int:
    report = make_report(args.path, with_opt=False, log=args.log)
    print(report.to_json() if args.json else report.line())
    return EXIT_OK


def cmd_opt(args) -> int:
    inst = load_any(args.path)
    opt = _opt(inst, args.bound)
    print(f"OPT {opt}")
    if args.sets:
        if isinstance(inst, VertexInstance):
            from .vertex import vertex_minimal_verifying_sets
            sets = vertex_minimal_verifying_sets(inst, bound=args.bound)
            order = list(inst.graph.vertices)
        else:
            sets = minimal_verifying_sets(inst, bound=args.bound)
            order = inst.graph.edge_ids
        print(json.dumps([sorted(s, key=order.index) for s in sets]))
    return EXIT_OK


def cmd_ratio(args) -> int:
    report = make_report(args.path, with_opt=True, bound=args.bound, log=args.log)
    print(report.to_json() if args.json else report.line())
    if args.assert_bound is not None and report.ratio is not None and report.ratio > args.assert_bound:
        print(f"ratio {report.ratio:.3f} exceeds bound {args.assert_bound}", file=sys.stderr)
        return EXIT_BOUND
    return EXIT_OK


def _edge_transcript(adv, result) -> dict:
    return {
        "requests": adv.history,
        "revealed": {k: format_weight(v) for k, v in adv.revealed.items()},
        "updates": result.trace.as_list(),
        "events": result.events,
    }


def generate(args) -> tuple[dict, dict | None]:
    """Build the requested family; returns the instance JSON and an optional transcript."""
    fam = args.family
    transcript = None
    if fam == "gadget-path":
        if args.adversarial:
            adv = gadget_adversary()
            g = gen_gadget_path(args.k)
            result = run_u_red(g, adv)
            inst = adv.induced_instance(g)
            transcript = _edge_transcript(adv, result)
        else:
            inst = gadget_instance(args.k)
        return inst.to_json(), transcript
    if fam == "star":
        pos = args.k if args.pos is None else args.pos
        inst = gen_star(args.k, pos, args.complete_bipartite, args.kind or "closed")
        return inst.to_json(), None
    if fam == "half-open-cycle":
        inst = gen_half_open_cycle(args.k, args.pos, args.kind or "open-closed")
        return inst.to_json(), None
    if fam == "random":
        inst = gen_random(args.seed, args.n, args.edge_prob, args.trivial_frac, max_edges=args.max_edges,
                          max_nontrivial=args.max_nontrivial)
        return inst.to_json(), None
    if fam == "random-vertex":
        vi = gen_random_vertex(args.seed, args.n, args.nontrivial)
        return vi.to_json(), None
    if fam == "vertex-lb":
        vg, adv = gen_vertex_lb(args.copies)
        if args.adversarial:
            result = run_vertex_u_red(vg, adv)
            transcript = {
                "requests": adv.history,
                "revealed": {k: list(v) for k, v in adv.revealed.items()},
                "updates": result.trace.as_list(),
                "events": result.events,
            }
        return adv.induced_instance().to_json(), transcript
    raise CLIError(f"unknown family {fam!r}", EXIT_INPUT)


def cmd_gen(args) -> int:
    try:
        data, transcript = generate(args)
    except (ValueError, UMSTError) as exc:
        if isinstance(exc, CLIError):
            raise
        raise CLIError(str(exc), EXIT_INPUT) from exc
    text = json.dumps(data, indent=1) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if transcript is not None and args.transcript:
        Path(args.transcript).write_text(json.dumps(transcript, indent=1) + "\n")
    return EXIT_OK


def _batch_one(path, bound):
    try:
        return make_report(path, with_opt=True, bound=bound), None
    except CLIError as exc:
        return None, (str(path), str(exc), exc.code)


def cmd_batch(args) -> int:
    files = sorted(p for p in Path(args.dir).glob("*.json"))
    if not files:
        raise CLIError(f"{args.dir}: no instance files", EXIT_INPUT)
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            outcomes = list(pool.map(_batch_one, files, [args.bound] * len(files)))
    else:
        outcomes = [_batch_one(p, args.bound) for p in files]
    rows = ["instance\tmodel\tupdates\topt\tratio"]
    code = EXIT_OK
    for report, failure in outcomes:
        if failure is not None:
            path, msg, c = failure
            print(msg, file=sys.stderr)
            code = max(code, c)
            continue
        rows.append(f"{report.instance}\t{report.model}\t{report.updates}\t{report.opt}\t{report.ratio:.6g}")
    text = "\n".join(rows) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def cmd_witness_check(args) -> int:
    inst = load_any(args.path)
    if isinstance(inst, VertexInstance):
        raise CLIError("witness-check works on edge instances", EXIT_INPUT)
    try:
        if args.edges:
            edges = [e.strip() for e in args.edges.split(",") if e.strip()]
            unknown = [e for e in edges if e not in inst.graph]
            if unknown:
                raise CLIError(f"unknown edges {unknown}", EXIT_INPUT)
            ok = is_witness_set(inst, None, edges, bound=args.bound)
            print(json.dumps({"edges": edges, "witness": ok}))
            return EXIT_OK
        result = run_u_red(inst)
        bad = 0
        for pair in result.pairs:
            ok = is_witness_set(inst, pair.view, {pair.f, pair.g}, bound=args.bound)
            bad += not ok
            print(json.dumps({"run": pair.run, "f": pair.f, "g": pair.g, "witness": ok}))
    except InstanceTooLarge as exc:
        raise CLIError(str(exc), EXIT_ORACLE) from exc
    return EXIT_OK if bad == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="umst", description="Minimum spanning trees under explorable uncertainty.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run u-red on an instance file")
    p.add_argument("path")
    p.add_argument("--log", help="write the event log as JSON lines")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("opt", help="optimal number of updates (brute force)")
    p.add_argument("path")
    p.add_argument("--sets", action="store_true", help="also list all minimal verifying sets")
    p.add_argument("--bound", type=int, help="largest number of non-trivial areas the oracle accepts")
    p.set_defaults(func=cmd_opt)

    p = sub.add_parser("ratio", help="u-red updates against the optimum")
    p.add_argument("path")
    p.add_argument("--bound", type=int)
    p.add_argument("--assert-bound", type=float, help="exit 5 if the ratio exceeds this value")
    p.add_argument("--log")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("gen", help="write an instance of a known family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--pos", type=int)
    p.add_argument("--kind", help="area kind for star / half-open-cycle (closed, closed-open, open-closed, open)")
    p.add_argument("--complete-bipartite", action="store_true")
    p.add_argument("--copies", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--nontrivial", type=int, default=3)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--trivial-frac", type=float, default=0.3)
    p.add_argument("--max-edges", type=int)
    p.add_argument("--max-nontrivial", type=int)
    p.add_argument("--adversarial", action="store_true", help="play the family's adversary against u-red")
    p.add_argument("--transcript", help="where to write the adversary play transcript")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("batch", help="ratio report for every *.json in a directory, as TSV")
    p.add_argument("dir")
    p.add_argument("--bound", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("witness-check", help="check witness sets with the oracle")
    p.add_argument("path")
    p.add_argument("--edges", help="comma separated edge ids; default: every pair u-red updates")
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_witness_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"umst: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
