"""Command-line front end.

Subcommands: `check` (decision run on a framework), `conditions` (compile a
graph to its condition system), `verify` (randomized oracle-vs-conditions
harness), and `render` (SVG figure).  All runs are deterministic under a
fixed --seed (fallback: the TENSEC_SEED environment variable); reports carry
no wall-clock data, so outputs are byte-identical across repeated runs.

Exit codes: 0 run completed (verdict inside the report), 2 malformed input,
3 general-position or chart precondition failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .conditions import (fulfilled_with_witness, generate_system, system_to_json,
                         to_sexpr)
from .errors import (InconsistentQuantizationError, InputError,
                     PreconditionError, TensecError)
from .framework import (find_nonparallelizable_stress,
                        forceload_from_stress, framework_from_json,
                        framework_in_general_position, graph_from_json,
                        self_stress_basis)
from .fixtures import DESARGUES_GRAPH, PASCAL_GRAPH
from .numeric import scalar_from_string, scalar_to_string
from .projective import AffineChart, ProjLine
from .quantization import (Quantization, ResolutionGraph, default_trees,
                           is_consistent, quantization_from_stress)
from .render import render_framed_cycle, render_framework
from .sampling import (desargues_concurrent_placement, pascal_conic_placement,
                       random_placement)


def _parse_chart(text: str) -> AffineChart:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise InputError("--chart expects three comma-separated rationals")
    return AffineChart(ProjLine([scalar_from_string(p) for p in parts]))


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(report: dict, text_lines, fmt: str):
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


class _Phases:
    """Wall-clock per phase, reported on stderr only (keeps stdout stable)."""

    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.entries = []

    def measure(self, name: str):
        phases = self

        class _Ctx:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                phases.entries.append((name, time.perf_counter() - self.t0))

        return _Ctx()

    def dump(self):
        if self.enabled:
            for name, dt in self.entries:
                print(f"[timing] {name}: {dt:.3f}s", file=sys.stderr)


# ---------------------------------------------------------------------------
# check

def cmd_check(args) -> int:
    fw = framework_from_json(_load_json(args.framework))
    fw.graph.require_min_degree(3)
    chart = _parse_chart(args.chart)
    phases = _Phases(args.timings)
    report = {"command": "check", "input": args.framework, "seed": args.seed}

    with phases.measure("general-position"):
        gp = framework_in_general_position(fw)
    report["general_position"] = gp
    if not gp:
        report["verdict"] = "UNDECIDED"
        _emit(report, ["general position: NO", "verdict: UNDECIDED"], args.format)
        phases.dump()
        return 3

    with phases.measure("oracle"):
        basis = self_stress_basis(fw, chart)
        stress = find_nonparallelizable_stress(fw, chart, seed=args.seed)
    report["stress_dim"] = len(basis)
    report["stress_basis"] = [
        {f"{u}-{v}": scalar_to_string(x) for (u, v), x in w.weights.items()}
        for w in basis
    ]
    oracle = stress is not None
    report["oracle_nonparallelizable"] = oracle

    with phases.measure("quantization"):
        quant = None
        if stress is not None:
            quant = quantization_from_stress(fw, forceload_from_stress(fw, stress, chart))
        else:
            trees = default_trees(fw)
            if all(fw.graph.degree(v) == 3 for v in fw.graph.vertices):
                quant = Quantization(ResolutionGraph(fw, trees), {})
        if quant is None:
            consistent = None
            report["quantization_note"] = "unknown (existential over the line slots)"
        else:
            try:
                consistent = is_consistent(quant, args.seed, mode=args.cycles)
            except PreconditionError as exc:
                consistent = None
                report["quantization_note"] = str(exc)
    report["quantization_consistent"] = consistent

    with phases.measure("conditions"):
        system = generate_system(fw.graph, mode=args.cycles)
        if system.xi.dimension == 0:
            witness = {}
            witness_kind = "empty"
        elif quant is not None and stress is not None:
            witness = quant.xi_witness()
            witness_kind = "derived"
        else:
            witness = None
            witness_kind = None
        if witness is None:
            fulfilled = None
            report["conditions_note"] = "unknown (existential over the line slots)"
        else:
            fulfilled = fulfilled_with_witness(system, fw, witness, args.seed)
    report["conditions_count"] = len(system.conditions)
    report["conditions"] = [
        {"cycle": list(c.cycle), "sexpr": to_sexpr(c.expr)}
        for c in system.conditions
    ]
    report["conditions_fulfilled"] = fulfilled
    report["witness"] = witness_kind
    report["verdict"] = "YES" if oracle else "NO"
    verdicts = [v for v in (oracle, consistent, fulfilled) if v is not None]
    report["verdict_sources_agree"] = len(set(verdicts)) == 1

    lines = [
        f"general position: YES",
        f"self-stress dimension: {len(basis)}",
        f"oracle non-parallelizable stress: {'YES' if oracle else 'NO'}",
        f"quantization consistent: {_tri(consistent)}",
        f"conditions fulfilled ({len(system.conditions)} conditions,"
        f" witness={witness_kind}): {_tri(fulfilled)}",
        f"verdict sources agree: {'YES' if report['verdict_sources_agree'] else 'NO'}",
        f"tensegrity: {report['verdict']}",
    ]
    _emit(report, lines, args.format)
    phases.dump()
    return 0


def _tri(v) -> str:
    return "unknown" if v is None else ("YES" if v else "NO")


# ---------------------------------------------------------------------------
# conditions

def cmd_conditions(args) -> int:
    g = graph_from_json(_load_json(args.graph))
    g.require_min_degree(3)
    system = generate_system(g, mode=args.cycles)
    payload = system_to_json(system)
    if args.format == "json":
        _emit(payload, [], "json")
    else:
        lines = [f"xi dimension: {system.xi.dimension}"]
        if system.xi.slots:
            lines.append("slots: " + " ".join(f"{v}:{i}" for v, i in system.xi.slots))
        lines.append(f"conditions: {len(system.conditions)}")
        for cond in system.conditions:
            lines.append(f"[{' '.join(cond.cycle)}] {to_sexpr(cond.expr)}")
        _emit({}, lines, "text")
    return 0


# ---------------------------------------------------------------------------
# verify

def _constrained_generator(g):
    if g == DESARGUES_GRAPH:
        return desargues_concurrent_placement
    if g == PASCAL_GRAPH:
        return pascal_conic_placement
    return None


def _draw_sample(g, constrained, index: int, sample_seed: int):
    """Deterministic general-position sample; odd indices use the
    constrained on-variety generator when one exists."""
    use_constrained = constrained is not None and index % 2 == 1
    for attempt in range(200):
        s = sample_seed * 211 + attempt
        fw = constrained(g, s) if use_constrained else random_placement(g, s, bound=60)
        if framework_in_general_position(fw):
            return fw
    raise PreconditionError(f"no general-position sample found for index {index}")


def cmd_verify(args) -> int:
    g = graph_from_json(_load_json(args.graph))
    g.require_min_degree(3)
    phases = _Phases(args.timings)
    with phases.measure("compile"):
        system = generate_system(g, mode=args.cycles)
    xi_dim = system.xi.dimension
    constrained = _constrained_generator(g)
    samples = []
    mismatches = []
    positives = negatives = unknown = 0
    with phases.measure("samples"):
        for i in range(args.samples):
            sample_seed = args.seed * 1000003 + i
            fw = _draw_sample(g, constrained, i, sample_seed)
            oracle_stress = find_nonparallelizable_stress(fw, seed=sample_seed)
            oracle = oracle_stress is not None
            if xi_dim == 0:
                cond = fulfilled_with_witness(system, fw, {}, sample_seed)
                mismatch = cond is not oracle
            elif oracle:
                quant = quantization_from_stress(
                    fw, forceload_from_stress(fw, oracle_stress))
                cond = fulfilled_with_witness(system, fw, quant.xi_witness(),
                                              sample_seed)
                mismatch = not cond
            else:
                cond = None
                unknown += 1
                mismatch = False
            positives += 1 if oracle else 0
            negatives += 0 if oracle else 1
            entry = {"index": i, "seed": sample_seed, "oracle": oracle,
                     "conditions": cond}
            samples.append(entry)
            if mismatch:
                mismatches.append(entry)
    report = {
        "command": "verify",
        "input": args.graph,
        "seed": args.seed,
        "samples": args.samples,
        "xi_dimension": xi_dim,
        "oracle_positive": positives,
        "oracle_negative": negatives,
        "skipped_unknown": unknown,
        "mismatches": mismatches,
        "mismatch_count": len(mismatches),
        "results": samples,
    }
    lines = [
        f"samples: {args.samples}",
        f"xi dimension: {xi_dim}",
        f"oracle positive: {positives}",
        f"oracle negative: {negatives}",
        f"condition verdict unknown (existential): {unknown}",
        f"mismatches: {len(mismatches)}",
    ]
    for m in mismatches:
        lines.append(f"  mismatch at sample {m['index']} (seed {m['seed']}): "
                     f"oracle={m['oracle']} conditions={m['conditions']}")
    _emit(report, lines, args.format)
    phases.dump()
    return 0


# ---------------------------------------------------------------------------
# render

def cmd_render(args) -> int:
    obj = _load_json(args.input)
    chart = _parse_chart(args.chart)
    if isinstance(obj, dict) and "framings" in obj:
        from .cycles import framed_cycle_from_json

        svg = render_framed_cycle(framed_cycle_from_json(obj), chart)
    else:
        svg = render_framework(framework_from_json(obj), chart)
    if args.output is None:
        raise InputError("render requires -o PATH")
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tensec",
        description="decide, compile, verify and draw planar tensegrity "
                    "conditions over exact rationals")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int,
                       default=int(os.environ.get("TENSEC_SEED", "0")))
        p.add_argument("--samples", type=int, default=200)
        p.add_argument("--cycles", choices=("all", "generators"), default="all")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--chart", default="0,0,1",
                       help="infinity-line coefficients a,b,c")
        p.add_argument("-o", "--output", default=None)
        p.add_argument("--timings", action="store_true",
                       help="print phase timings to stderr")

    p_check = sub.add_parser("check", help="full decision run on a framework")
    p_check.add_argument("framework")
    common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_cond = sub.add_parser("conditions", help="compile a graph to conditions")
    p_cond.add_argument("graph")
    common(p_cond)
    p_cond.set_defaults(func=cmd_conditions)

    p_verify = sub.add_parser("verify", help="randomized oracle comparison")
    p_verify.add_argument("graph")
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_render = sub.add_parser("render", help="render a framework or framed cycle")
    p_render.add_argument("input")
    common(p_render)
    p_render.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InconsistentQuantizationError as exc:
        print(f"error: {exc} (cycle {' '.join(exc.cycle)})", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except TensecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
