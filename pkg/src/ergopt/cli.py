"""Command line entry point.

Exit codes: 0 success, 1 a verified claim failed, 2 usage or parse error,
3 degenerate input (no invariant measure).
"""
import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import experiments
from .curve import compute_curve
from .errors import DegenerateSystem, EmptyRecurrentPart, ErgoptError
from .formats import (
    Case,
    SystemDocument,
    dumps,
    load_bundled_fixtures,
    load_document,
)
from .graph import TransitionGraph, format_rational, parse_rational
from .maxmean import max_cycle_mean_karp
from .symbolic import lift, lift_pair

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3
CLAIM_CHOICES = ("all",) + experiments.CLAIMS


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: Optional[Path] = None
    output: Optional[Path] = None
    seed: int = 0
    samples: int = 1000
    grid_denominator: int = 10007
    interval: tuple = (Fraction(0), Fraction(1))
    claim: str = "all"
    potential: str = "f"
    directions: list = field(default_factory=list)
    interval_given: bool = False

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        interval_given = args.interval is not None
        try:
            interval = tuple(parse_rational(x) for x in (args.interval or ("0", "1")))
        except ValueError as exc:
            raise UsageError(f"--interval: {exc}") from None
        if not interval[0] < interval[1]:
            raise UsageError(f"--interval needs a < b, got {args.interval}")
        if args.seed < 0:
            raise UsageError("--seed must be non-negative")
        if args.samples is not None and args.samples < 0:
            raise UsageError("--samples must be non-negative")
        if args.grid_denominator <= 0:
            raise UsageError("--grid-denominator must be positive")
        claim = getattr(args, "claim_pos", None) or args.claim
        if claim not in CLAIM_CHOICES:
            raise UsageError(f"unknown claim {claim!r}; choose from {', '.join(CLAIM_CHOICES)}")
        samples = args.samples
        if samples is None:
            samples = 50 if args.command == "verify" else 1000
        return cls(
            command=args.command,
            input=Path(args.input) if args.input else None,
            output=Path(args.output) if args.output else None,
            seed=args.seed,
            samples=samples,
            grid_denominator=args.grid_denominator,
            interval=interval,
            claim=claim,
            potential=args.potential,
            directions=list(args.direction or []),
            interval_given=interval_given,
        )


def _emit(text: str, output: Optional[Path]):
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


def _load_system(config: RunConfig) -> SystemDocument:
    if config.input is None:
        raise UsageError(f"{config.command} needs --input")
    doc = load_document(config.input)
    if isinstance(doc, TransitionGraph):
        raise UsageError(f"{config.input} is a graph document; {config.command} needs a system")
    return doc


def cmd_beta(config: RunConfig) -> int:
    if config.input is None:
        raise UsageError("beta needs --input")
    doc = load_document(config.input)
    if isinstance(doc, TransitionGraph):
        graph = doc
    else:
        graph = lift(doc.system, doc.potential(config.potential))
    result = max_cycle_mean_karp(graph)
    cycle = result.witness_cycle
    labels = [graph.edges[e].label for e in cycle.edges]
    witness = " ".join(labels) if all(labels) else " ".join(map(str, cycle.edges))
    _emit(
        f"beta: {format_rational(result.lam)} (~{float(result.lam):.6f})\n"
        f"witness cycle: {witness}\n",
        config.output,
    )
    return EXIT_OK


def cmd_curve(config: RunConfig) -> int:
    doc = _load_system(config)
    direction = config.directions[0] if config.directions else "g"
    gf, gg = lift_pair(doc.system, doc.potential(config.potential), doc.potential(direction))
    curve = compute_curve(gf, gg, *config.interval)
    _emit(curve.to_csv(), config.output)
    return EXIT_OK


def _verify_cases(config: RunConfig):
    if config.input is None:
        docs = load_bundled_fixtures()
    else:
        docs = [_load_system(config)]
    for doc in docs:
        if config.input is not None and (config.directions or config.interval_given):
            names = config.directions or ["g"]
            for name in names:
                yield doc, Case(f"{doc.name}:{name}", config.potential, name, config.interval)
        else:
            for case in experiments.document_cases(doc):
                yield doc, case


def cmd_verify(config: RunConfig) -> int:
    claims = experiments.CLAIMS + ("fixture",) if config.claim == "all" else (config.claim,)
    reports = []
    for doc, case in _verify_cases(config):
        reports += experiments.run_case(doc, case, claims, seed=config.seed,
                                        pairs=config.samples)
    if not reports:
        raise UsageError("nothing to verify: no cases and no f/g potentials")
    passed = all(r.passed for r in reports)
    lines = [experiments.render_table(reports)]
    for r in reports:
        for c in r.failures():
            lines.append(f"FAILED {r.claim} {r.instance.get('fixture')}: {c.name} "
                         f"{dumps(c.to_dict()['witness']).strip()}")
    lines.append(f"overall: {'PASS' if passed else 'FAIL'} ({len(reports)} reports)")
    print("\n".join(lines))
    if config.output is not None:
        config.output.write_text(dumps({
            "passed": passed,
            "reports": [r.to_dict() for r in reports],
        }))
    return EXIT_OK if passed else EXIT_FAIL


def cmd_prevalence(config: RunConfig) -> int:
    doc = _load_system(config)
    names = config.directions or [n for n in doc.potentials if n != config.potential]
    directions = {n: doc.potential(n) for n in names}
    report = experiments.prevalence_line_experiment(
        doc.system, doc.potential(config.potential), directions, config.samples,
        config.grid_denominator, config.seed, doc.name,
    )
    print(experiments.render_prevalence_table(report))
    if config.output is not None:
        config.output.write_text(dumps(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {
    "beta": cmd_beta,
    "curve": cmd_curve,
    "verify": cmd_verify,
    "prevalence": cmd_prevalence,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergopt",
        description="Exact maximum ergodic averages for locally constant potentials on SFTs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("beta", "maximum ergodic average and a maximising periodic orbit"),
        ("curve", "breakpoint table of t -> beta(f + t g)"),
        ("verify", "run the claim verifiers (default: bundled fixtures)"),
        ("prevalence", "line-sampling experiment on a rational grid in [0, 1]"),
    ]:
        p = sub.add_parser(name, help=help_text)
        if name == "verify":
            p.add_argument("claim_pos", nargs="?", metavar="CLAIM",
                           help="all, 1, 2, 3, 4 or diam")
        p.add_argument("--input", help="system or graph JSON document")
        p.add_argument("--output", help="write the result here instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=None,
                       help="prevalence: samples per direction (1000); verify: pairs (50)")
        p.add_argument("--grid-denominator", type=int, default=10007)
        p.add_argument("--interval", nargs=2, metavar=("A", "B"), default=None,
                       help="parameter interval, e.g. 0 3/2 (default 0 1)")
        p.add_argument("--claim", default="all")
        p.add_argument("--potential", default="f", help="name of the base potential")
        p.add_argument("--direction", action="append",
                       help="direction potential name (repeatable)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig.from_args(args)
        return COMMANDS[config.command](config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EmptyRecurrentPart, DegenerateSystem) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ErgoptError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
