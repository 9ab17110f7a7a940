"""Command-line front end: ``check``, ``outcomes``, ``generate`` and ``compare``.

Exit codes: 0 when the work completed and any stated expectation held, 2 when
a litmus test's expectation was violated, 1 for usage, parse or configuration
errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import engine, generator, litmus_io
from .model import ConfigError, GenerationConfig, LitmusError, LitmusTest, Load, MemoryModel, Program, Store
from .semantics import matches

EXIT_OK, EXIT_ERROR, EXIT_VIOLATED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _mcm(tag: str) -> MemoryModel:
    try:
        return MemoryModel.parse(tag)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="litmuskit", description="Simulate, enumerate and generate litmus tests under SC and TSO.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--threads", type=int, default=1, metavar="N", help="worker processes (output is unaffected)")

    p = sub.add_parser("check", parents=[common], help="search for an execution reaching a test's condition")
    p.add_argument("litmus", type=Path)
    p.add_argument("--mcm", type=_mcm, default=MemoryModel.SC)
    p.add_argument("--witness", action="store_true", help="print one witness execution")

    p = sub.add_parser("outcomes", parents=[common], help="list every distinct reachable final state")
    p.add_argument("litmus", type=Path)
    p.add_argument("--mcm", type=_mcm, default=MemoryModel.SC)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--respect-condition", action="store_true", help="keep only outcomes matching the condition")

    p = sub.add_parser("generate", parents=[common], help="generate all tests reaching a final state")
    p.add_argument("param", type=Path)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--mcm", type=_mcm, default=None, help="override the parameter file's model")
    p.add_argument("--values-exclude-initial", action="store_true", default=None)
    p.add_argument("--distinct-ops-per-core", action="store_true", default=None)

    p = sub.add_parser("compare", parents=[common], help="partition tests by strict vs relaxed model")
    p.add_argument("param", type=Path)
    p.add_argument("--strict", type=_mcm, default=MemoryModel.SC)
    p.add_argument("--relaxed", type=_mcm, default=MemoryModel.TSO)
    p.add_argument("--from", dest="source", type=Path, default=None, help="directory of .litmus files to compare")
    p.add_argument("--values-exclude-initial", action="store_true", default=None)
    p.add_argument("--distinct-ops-per-core", action="store_true", default=None)
    return parser


def _load_test(path: Path) -> LitmusTest:
    return litmus_io.parse_litmus(path.read_text(encoding="utf-8"))


def _load_param(args) -> GenerationConfig:
    gen = litmus_io.parse_param(args.param.read_text(encoding="utf-8"))
    overrides = {}
    if getattr(args, "mcm", None) is not None:
        overrides["mcm"] = args.mcm
    if args.values_exclude_initial is not None:
        overrides["values_exclude_initial"] = True
    if args.distinct_ops_per_core is not None:
        overrides["distinct_ops_per_core"] = True
    return dataclasses.replace(gen, **overrides) if overrides else gen


def cmd_check(args) -> int:
    test = _load_test(args.litmus)
    witness = engine.check_allowed(test.config, test.program, args.mcm, test.condition)
    report = litmus_io.CheckReport(test, args.mcm, witness, show_witness=args.witness)
    sys.stdout.write(litmus_io.emit_report(report, args.format))
    return EXIT_OK if report.confirmed else EXIT_VIOLATED


def cmd_outcomes(args) -> int:
    test = _load_test(args.litmus)
    outcomes = engine.reachable_final_states(test.config, test.program, args.mcm, threads=args.threads)
    if args.respect_condition:
        kept = engine.OutcomeSet()
        for state, witness in outcomes.items():
            if matches(state, test.condition):
                kept.add(state, witness)
        outcomes = kept
    n_exec = engine.count_executions(test.config, test.program, args.mcm)
    report = litmus_io.OutcomeReport(test, outcomes, n_exec, count_only=args.count_only)
    sys.stdout.write(litmus_io.emit_report(report, args.format))
    return EXIT_OK


def cmd_generate(args) -> int:
    gen = _load_param(args)
    report = generator.generate(gen, threads=args.threads)
    names = []
    try:
        args.out.mkdir(parents=True, exist_ok=True)
        for program in report.accepted:
            test = litmus_io.test_from_program(gen, program)
            names.append(test.name)
            (args.out / f"{test.name}.litmus").write_text(litmus_io.emit_litmus(test), encoding="utf-8")
        named = litmus_io.NamedGenerationReport(gen, report, names)
        (args.out / "summary.json").write_text(litmus_io.emit_report(named, "structured"), encoding="utf-8")
    except OSError as exc:
        raise LitmusError(f"cannot write to {args.out}: {exc.strerror or exc}") from exc
    sys.stdout.write(litmus_io.emit_report(named, args.format))
    return EXIT_OK


def remap_program(test: LitmusTest, variable_names) -> Program:
    """Re-express ``test.program`` over another variable name table."""
    index = {name: i for i, name in enumerate(variable_names)}
    missing = [name for name in test.variable_names if name not in index]
    if missing:
        raise ConfigError(f"{test.name}: variable {missing[0]!r} not declared in the parameter file")
    ids = [index[name] for name in test.variable_names]
    return Program(
        [
            [Load(op.register, ids[op.variable]) if isinstance(op, Load) else Store(ids[op.variable], op.value) for op in ops]
            for ops in test.program
        ]
    )


def cmd_compare(args) -> int:
    gen = _load_param(args)
    if args.source is not None:
        paths = sorted(args.source.glob("*.litmus"))
        programs = [remap_program(_load_test(p), gen.variable_names) for p in paths]
        for program in programs:
            gen.config.check_program(program)
        source = f"{len(paths)} litmus files from {args.source.name or args.source}"
    elif gen.include_programs:
        programs = [p for p in gen.include_programs if p not in gen.exclude_programs]
        source = "include_programs of the parameter file"
    else:
        relaxed_gen = dataclasses.replace(gen, mcm=args.relaxed)
        programs = generator.generate(relaxed_gen, threads=args.threads).accepted
        source = f"all programs generated under {args.relaxed.value}"
    report = generator.compare_models(
        gen.config, programs, args.strict, args.relaxed, gen.final_spec, threads=args.threads
    )
    named = litmus_io.NamedComparisonReport(report, gen.variable_names, source)
    sys.stdout.write(litmus_io.emit_report(named, args.format))
    return EXIT_OK


COMMANDS = {"check": cmd_check, "outcomes": cmd_outcomes, "generate": cmd_generate, "compare": cmd_compare}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (LitmusError, OSError) as exc:
        print(f"litmuskit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
