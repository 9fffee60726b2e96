"""Command-line front end.

Every subcommand builds a ``Report`` and renders it either as aligned text
tables or as a single JSON object. Results go to stdout, errors to stderr.

Exit codes: 0 success, 1 a verification check failed, 2 bad arguments or
unparseable input, 3 the oracle breaks the constant-or-balanced promise.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import qsim
from .deutsch import (
    BALANCED_ENUM_CAP,
    FunctionTable,
    classify_classical,
    classify_quantum,
    deutsch_jozsa_state,
    load_oracle,
    require_promise,
)
from .errors import LengthError, ParseError, PromiseViolation
from .interferometer import (
    MzNetwork,
    deutsch_phases,
    firing_detector,
    mz_intensities,
    phase_error_sweep,
)
from .switchboard import (
    alice_inspect,
    all_observations,
    consistent_wirings,
    is_balanced,
    lower_terminal_count,
    nwire_inspect,
    parse_cables,
    parse_wiring,
)
from .verify import MAX_VERIFY_N, run_checks

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_PROMISE = 3

DEFAULT_SHOTS = 16

Record = dict[str, Any]


@dataclass
class Report:
    """Output of one command: echoed inputs plus named sections of records."""

    command: str
    inputs: Record = field(default_factory=dict)
    results: dict[str, list[Record]] = field(default_factory=dict)
    format: str = "table"

    def to_dict(self) -> dict[str, Any]:
        return {"command": self.command, "inputs": self.inputs, "results": self.results}

    @classmethod
    def from_dict(cls, data: dict[str, Any], format: str = "json") -> Report:
        return cls(data["command"], dict(data["inputs"]), {k: list(v) for k, v in data["results"].items()}, format)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_table(self) -> str:
        blocks = []
        for section, records in self.results.items():
            blocks.append(f"[{section}]\n" + render_table(records))
        return "\n\n".join(blocks)

    def render(self) -> str:
        return self.to_json() if self.format == "json" else self.to_table()


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.12g}"
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    return str(value)


def render_table(records: Sequence[Record]) -> str:
    if not records:
        return "(none)"
    columns: list[str] = []
    for rec in records:
        columns.extend(k for k in rec if k not in columns)
    rows = [[_cell(rec.get(c)) for c in columns] for rec in records]
    widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(columns)]
    line = lambda cells: "  ".join(v.ljust(w) for v, w in zip(cells, widths)).rstrip()
    out = [line(columns), line(["-" * w for w in widths])]
    out.extend(line(r) for r in rows)
    return "\n".join(out)


def cmd_truth_table(args: argparse.Namespace) -> Report:
    rows = []
    for obs in all_observations():
        ws = sorted(w.name.lower() for w in consistent_wirings(obs))
        rows.append(
            {
                "left": str(obs.left),
                "right": str(obs.right),
                "light": "on" if obs.light else "off",
                "wirings": " ".join(ws),
                "has_balanced": any(is_balanced(w) for w in consistent_wirings(obs)),
                "has_constant": any(not is_balanced(w) for w in consistent_wirings(obs)),
            }
        )
    return Report("truth-table", {}, {"observations": rows})


def cmd_inspect(args: argparse.Namespace) -> Report:
    w = parse_wiring(args.wiring)
    res = alice_inspect(w)
    rec = {
        "wiring": w.name.lower(),
        "lower_terminal_count": lower_terminal_count(w),
        "final": str(res.final),
        "verdict": str(res.verdict),
    }
    return Report("inspect", {"wiring": args.wiring}, {"inspection": [rec]})


def cmd_deutsch(args: argparse.Namespace) -> Report:
    f = load_oracle(args.oracle)
    truth = require_promise(f)
    results: dict[str, list[Record]] = {}
    summary: Record = {"table": str(f), "input_bits": f.input_bits}
    if args.mode in ("quantum", "both"):
        q = classify_quantum(f)
        summary.update(
            classification=str(q.classification),
            quantum_queries=q.log.queries,
            certainty=q.certainty,
        )
    if args.mode in ("classical", "both"):
        c = classify_classical(f)
        summary.setdefault("classification", str(c.classification))
        summary["classical_queries"] = c.log.queries
        results["classical_transcript"] = [
            {"query": i + 1, "input": x, "output": y} for i, (x, y) in enumerate(c.log.transcript)
        ]
    summary["table_classification"] = str(truth)
    results = {"summary": [summary], **results}
    if args.seed is not None and args.mode in ("quantum", "both"):
        results["samples"] = _sample_input_register(f, args.seed, args.shots)
    inputs = {"oracle": args.oracle, "mode": args.mode, "seed": args.seed}
    return Report("deutsch", inputs, results)


def _sample_input_register(f: FunctionTable, seed: int, shots: int) -> list[Record]:
    """Measured input-register bit strings from the one-query circuit."""
    n = f.input_bits
    state = deutsch_jozsa_state(f)
    outcomes = qsim.sample(state, shots, seed)
    return [{"shot": i + 1, "input_register": qsim.basis_label(k >> 1, n)} for i, k in enumerate(outcomes)]


def cmd_verify(args: argparse.Namespace) -> Report:
    limit = BALANCED_ENUM_CAP if args.extended else MAX_VERIFY_N
    if not 1 <= args.max_n <= limit:
        raise _UsageError(f"--max-n must be between 1 and {limit}, got {args.max_n}")
    checks = run_checks(args.max_n)
    records = [
        {
            "check": c.name,
            "passed": c.passed,
            "cases": c.cases,
            "seconds": round(c.seconds, 4),
            "failures": "; ".join(c.failures),
        }
        for c in checks
    ]
    total = {
        "checks": len(checks),
        "passed": sum(c.passed for c in checks),
        "failed": sum(not c.passed for c in checks),
        "cases": sum(c.cases for c in checks),
    }
    return Report("verify", {"max_n": args.max_n}, {"checks": records, "total": [total]})


def cmd_mz(args: argparse.Namespace) -> Report:
    if args.oracle is not None:
        if args.phases:
            raise _UsageError("give either two phases or --oracle, not both")
        f = load_oracle(args.oracle)
        if f.input_bits != 1:
            raise _UsageError(f"the interferometer takes a 2-bit oracle string, got length {len(f.values)}")
        net = deutsch_phases(f)
    else:
        if len(args.phases) != 2:
            raise _UsageError("mz needs exactly two phases (upper lower) or --oracle")
        try:
            upper, lower = (float(p) for p in args.phases)
        except ValueError as exc:
            raise ParseError(f"phases must be numbers: {exc}") from None
        if not (math.isfinite(upper) and math.isfinite(lower)):
            raise ParseError("phases must be finite")
        net = MzNetwork(upper, lower, 0)
    out = mz_intensities(net)
    detector = firing_detector(out)
    rec = {
        "phase_upper": net.phase_upper,
        "phase_lower": net.phase_lower,
        "delta": net.delta,
        "port0": out.port0,
        "port1": out.port1,
        "firing_detector": detector,
    }
    results: dict[str, list[Record]] = {"intensities": [rec]}
    if args.epsilon is not None:
        if not (math.isfinite(args.epsilon) and args.epsilon >= 0):
            raise _UsageError("--epsilon must be a finite number >= 0")
        results["phase_error_sweep"] = [
            {"target": p.target, "epsilon": args.epsilon, "worst_error": p.error}
            for p in phase_error_sweep([net.delta], args.epsilon)
        ]
    if args.seed is not None:
        state = qsim.StateVector(1, [math.sqrt(out.port0), math.sqrt(out.port1)])
        clicks = qsim.sample(state, args.shots, args.seed)
        results["detector_clicks"] = [{"shot": i + 1, "detector": k} for i, k in enumerate(clicks)]
    inputs = {"phases": list(args.phases), "oracle": args.oracle, "epsilon": args.epsilon, "seed": args.seed}
    return Report("mz", inputs, results)


def cmd_nwire(args: argparse.Namespace) -> Report:
    run = parse_cables(args.cables)
    per_cable = [
        {"cable": i + 1, "wiring": w.name.lower(), "lower_terminal_count": lower_terminal_count(w)}
        for i, w in enumerate(run.cables)
    ]
    res = nwire_inspect(run)
    summary = {
        "wires": run.num_wires,
        "total": sum(r["lower_terminal_count"] for r in per_cable),
        "final": str(res.final),
        "parity": str(res.parity),
    }
    return Report("nwire", {"cables": args.cables}, {"cables": per_cable, "summary": [summary]})


class _UsageError(Exception):
    pass


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"seed must fit in an unsigned 64-bit integer: {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    # Global flags are accepted before or after the subcommand.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "json"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=_u64, default=argparse.SUPPRESS,
                        help="enables demonstration sampling with this RNG seed")

    parser = argparse.ArgumentParser(
        prog="djswitch",
        description="Deutsch-Jozsa as a qubit circuit, a two-switch light circuit and an interferometer.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("truth-table", parents=[common], help="wirings consistent with each observation")
    p.set_defaults(func=cmd_truth_table)

    p = sub.add_parser("inspect", parents=[common], help="flip-on-lower-terminal inspection of one wiring")
    p.add_argument("wiring", help="a, b, c or d")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("deutsch", parents=[common], help="classify an oracle table")
    p.add_argument("oracle", help="bit string such as 0110, or a file containing one")
    p.add_argument("--mode", choices=["quantum", "classical", "both"], default="both")
    p.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    p.set_defaults(func=cmd_deutsch)

    p = sub.add_parser("verify", parents=[common], help="run every exhaustive cross-check")
    p.add_argument("--max-n", type=int, default=MAX_VERIFY_N)
    p.add_argument("--extended", action="store_true",
                   help=f"allow --max-n up to the balanced enumeration cap ({BALANCED_ENUM_CAP})")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mz", parents=[common], help="Mach-Zehnder detector intensities")
    p.add_argument("phases", nargs="*", help="upper and lower arm phases in radians")
    p.add_argument("--oracle", help="one-bit oracle string (two characters)")
    p.add_argument("--epsilon", type=float, help="phase error for the sensitivity sweep")
    p.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    p.set_defaults(func=cmd_mz)

    p = sub.add_parser("nwire", parents=[common], help="parity of a run of cables")
    p.add_argument("cables", help="string over a, b, c, d")
    p.set_defaults(func=cmd_nwire)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format = getattr(args, "format", "table")
    args.seed = getattr(args, "seed", None)
    try:
        report = args.func(args)
    except PromiseViolation as exc:
        print(f"djswitch: promise violation: {exc}", file=sys.stderr)
        return EXIT_PROMISE
    except LengthError as exc:
        print(f"djswitch: bad oracle length: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"djswitch: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _UsageError as exc:
        print(f"djswitch: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"djswitch: cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.format = args.format
    print(report.render())
    if report.command == "verify" and report.results["total"][0]["failed"]:
        print("djswitch: verification failed", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
