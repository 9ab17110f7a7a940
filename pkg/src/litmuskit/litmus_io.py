"""Reading and writing litmus tests, parameter files and reports.

Litmus files use a strict subset of the herd/diy x86 syntax::

    X86 SB000a
    { x=0; }
     P0          | P1          ;
     MOV [x],$1  | MOV [x],$2  ;
     MOV EAX,[x] | MOV EAX,[x] ;
    exists (x=2 /\\ 0:EAX=1 /\\ 1:EAX=2)

Parameter files and structured reports are JSON documents with a fixed key
order; the README describes both.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .engine import OutcomeSet
from .generator import ComparisonReport, GenerationReport, program_sort_key
from .model import (
    INITIAL,
    REGISTER_NAMES,
    ConfigError,
    EventId,
    Expectation,
    FinalStateSpec,
    GenerationConfig,
    LitmusConfig,
    LitmusError,
    LitmusTest,
    Load,
    MachineState,
    MemoryModel,
    Operation,
    Program,
    Store,
    default_variable_names,
    operation_at,
)
from .semantics import final_state


class LitmusSyntaxError(LitmusError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


_LOC = r"[a-z][a-zA-Z0-9_]*"
_REG = "|".join(REGISTER_NAMES)
_STORE_RE = re.compile(rf"MOV\s*\[\s*({_LOC})\s*\]\s*,\s*\$?(\d+)", re.IGNORECASE)
_LOAD_RE = re.compile(rf"MOV\s+({_REG})\s*,\s*\[\s*({_LOC})\s*\]", re.IGNORECASE)
_INFO_RE = re.compile(r"^([A-Za-z][\w.-]*)\s*=\s*(.*)$")
_COMMENT_RE = re.compile(r"\(\*.*?\*\)", re.DOTALL)
_REG_ATOM_RE = re.compile(rf"^(\d+)\s*:\s*({_REG})\s*=\s*(\d+|INITIAL)$", re.IGNORECASE)
_VAR_ATOM_RE = re.compile(rf"^\[?\s*({_LOC})\s*\]?\s*=\s*(\d+)$")
_CONDITION_START = ("exists", "~exists", "forall", "~forall", "locations", "filter")
_SIZE_KEYS = {"registers": "n_registers", "values": "n_values", "maxops": "max_ops_per_core"}


def _blank_comment(match: re.Match) -> str:
    # Keep newlines so that reported line numbers stay correct.
    return re.sub(r"[^\n]", " ", match.group(0))


class _Names:
    """Variable name table built in first-use order."""

    def __init__(self, declared: Sequence[str] = ()):
        self.ids: dict[str, int] = {}
        for name in declared:
            self.get(name)

    def get(self, name: str) -> int:
        return self.ids.setdefault(name, len(self.ids))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.ids)


def parse_instruction(text: str, names: _Names, line: int | None = None, column: int | None = None) -> Operation:
    text = text.strip()
    m = _STORE_RE.fullmatch(text)
    if m:
        return Store(names.get(m.group(1)), int(m.group(2)))
    m = _LOAD_RE.fullmatch(text)
    if m:
        return Load(REGISTER_NAMES.index(m.group(1).upper()), names.get(m.group(2)))
    mnemonic = text.split()[0].upper() if text.split() else ""
    if mnemonic and mnemonic != "MOV":
        raise LitmusSyntaxError(f"unsupported instruction {mnemonic!r}", line, column)
    raise LitmusSyntaxError(f"cannot parse instruction {text!r}", line, column)


def parse_condition(text: str, names: _Names, n_cores: int, line: int | None = None):
    """Parse ``[~]exists (atom /\\ ...)``; returns (expectation, registers, variables)."""
    body = text.strip()
    if body.startswith("~exists"):
        expectation, body = Expectation.FORBIDDEN, body[len("~exists"):]
    elif body.startswith("exists"):
        expectation, body = Expectation.ALLOWED, body[len("exists"):]
    else:
        keyword = body.split()[0] if body.split() else body
        raise LitmusSyntaxError(f"unsupported condition {keyword!r} (expected exists or ~exists)", line)
    if "\\/" in body:
        raise LitmusSyntaxError("disjunction in condition is not supported; split it into separate tests", line)
    body = body.replace("(", " ").replace(")", " ").strip()
    registers: dict[tuple[int, int], object] = {}
    variables: dict[int, int] = {}
    if not body or body == "true":
        return expectation, registers, variables
    for atom in body.split("/\\"):
        atom = atom.strip()
        m = _REG_ATOM_RE.fullmatch(atom)
        if m:
            core = int(m.group(1))
            if core >= n_cores:
                raise LitmusSyntaxError(f"condition names register on undeclared core P{core}", line)
            cell = (core, REGISTER_NAMES.index(m.group(2).upper()))
            content = INITIAL if m.group(3).upper() == "INITIAL" else int(m.group(3))
            if registers.setdefault(cell, content) != content:
                raise LitmusSyntaxError(f"conflicting constraints on {atom.split('=')[0]}", line)
            continue
        m = _VAR_ATOM_RE.fullmatch(atom)
        if m:
            if m.group(1) not in names.ids:
                raise LitmusSyntaxError(f"condition names undeclared variable {m.group(1)!r}", line)
            var, value = names.ids[m.group(1)], int(m.group(2))
            if variables.setdefault(var, value) != value:
                raise LitmusSyntaxError(f"conflicting constraints on {m.group(1)}", line)
            continue
        if re.fullmatch(r"\d+\s*:\s*\w+\s*=.*", atom):
            raise LitmusSyntaxError(f"condition names undeclared register in {atom!r}", line)
        raise LitmusSyntaxError(f"cannot parse condition atom {atom!r}", line)
    return expectation, registers, variables


def parse_litmus(text: str) -> LitmusTest:
    lines = _COMMENT_RE.sub(_blank_comment, text).split("\n")
    numbered = [(i + 1, raw) for i, raw in enumerate(lines) if raw.strip()]
    if not numbered:
        raise LitmusSyntaxError("empty litmus file", 1)
    pos = 0

    lineno, header = numbered[pos]
    parts = header.split()
    if len(parts) != 2:
        raise LitmusSyntaxError("header must be '<arch> <name>'", lineno, 1)
    if parts[0].upper() != "X86":
        raise LitmusSyntaxError(f"unsupported architecture {parts[0]!r}", lineno, 1)
    name = parts[1]
    pos += 1

    sizes: dict[str, int] = {}
    while pos < len(numbered) and not numbered[pos][1].lstrip().startswith("{"):
        lineno, raw = numbered[pos]
        stripped = raw.strip()
        info = _INFO_RE.match(stripped)
        if stripped.startswith('"'):
            pass
        elif info:
            key = info.group(1).lower()
            if key in _SIZE_KEYS:
                try:
                    sizes[_SIZE_KEYS[key]] = int(info.group(2))
                except ValueError:
                    raise LitmusSyntaxError(f"{info.group(1)} must be an integer", lineno) from None
        else:
            raise LitmusSyntaxError("expected initial state block '{ ... }'", lineno, 1)
        pos += 1
    if pos == len(numbered):
        raise LitmusSyntaxError("missing initial state block '{ ... }'", numbered[-1][0])

    # initial block, possibly spanning lines
    init_start = numbered[pos][0]
    chunks = []
    while True:
        lineno, raw = numbered[pos]
        chunks.append(raw)
        pos += 1
        if "}" in raw:
            break
        if pos == len(numbered):
            raise LitmusSyntaxError("unterminated initial state block", init_start)
    init_text = " ".join(chunks)
    init_text = init_text[init_text.index("{") + 1 : init_text.index("}")]
    names = _Names()
    init_values: dict[int, int] = {}
    for entry in filter(None, (e.strip() for e in init_text.split(";"))):
        m = _VAR_ATOM_RE.fullmatch(entry)
        if not m:
            if ":" in entry:
                raise LitmusSyntaxError(f"register initialisation {entry!r} is not supported", init_start)
            raise LitmusSyntaxError(f"cannot parse initial value {entry!r}", init_start)
        init_values[names.get(m.group(1))] = int(m.group(2))

    if pos == len(numbered):
        raise LitmusSyntaxError("missing program columns", lineno)
    lineno, raw = numbered[pos]
    heads = [c.strip() for c in raw.strip().rstrip(";").split("|")]
    for core, head in enumerate(heads):
        if head != f"P{core}":
            raise LitmusSyntaxError(f"expected column header 'P{core}', found {head!r}", lineno)
    n_cores = len(heads)
    pos += 1

    columns: list[list[Operation]] = [[] for _ in range(n_cores)]
    while pos < len(numbered) and not numbered[pos][1].strip().startswith(_CONDITION_START):
        lineno, raw = numbered[pos]
        row = raw.rstrip()
        if row.endswith(";"):
            row = row[:-1]
        cells = row.split("|")
        if len(cells) != n_cores:
            raise LitmusSyntaxError(f"row has {len(cells)} columns, expected {n_cores}", lineno)
        offset = 0
        for core, cell in enumerate(cells):
            if cell.strip():
                column = offset + len(cell) - len(cell.lstrip()) + 1
                columns[core].append(parse_instruction(cell, names, lineno, column))
            offset += len(cell) + 1
        pos += 1
    for core, ops in enumerate(columns):
        if not ops:
            raise LitmusSyntaxError(f"P{core} has no instructions", lineno)

    expectation = Expectation.UNKNOWN
    registers: dict = {}
    variables: dict = {}
    rest = [(n, r) for n, r in numbered[pos:] if not r.strip().startswith("locations")]
    if rest:
        cond_line = rest[0][0]
        if rest[0][1].strip().startswith("filter"):
            raise LitmusSyntaxError("filter clauses are not supported", cond_line)
        expectation, registers, variables = parse_condition(
            " ".join(r.strip() for _, r in rest), names, n_cores, cond_line
        )

    initial = set(init_values.values()) | ({0} if len(init_values) < len(names.ids) else set())
    if len(initial) > 1:
        raise LitmusSyntaxError("all variables must share one initial value", init_start)
    initial_value = initial.pop() if initial else 0

    program = Program(columns)
    inferred = _infer_sizes(program, registers, variables, initial_value)
    for key, value in sizes.items():
        if value < inferred[key]:
            raise LitmusSyntaxError(f"declared {key}={value} is smaller than the test requires ({inferred[key]})")
        inferred[key] = value
    try:
        config = LitmusConfig(
            n_cores=n_cores,
            n_variables=len(names.ids),
            initial_value=initial_value,
            **inferred,
        )
        return LitmusTest(
            name=name,
            config=config,
            program=program,
            condition=FinalStateSpec(registers, variables),
            expectation=expectation,
            variable_names=names.names,
        )
    except (ConfigError, LitmusError) as exc:
        raise LitmusSyntaxError(str(exc)) from exc


def _infer_sizes(program: Program, registers, variables, initial_value: int) -> dict[str, int]:
    regs = [op.register for ops in program for op in ops if isinstance(op, Load)]
    regs += [reg for (_, reg) in registers]
    values = [op.value for ops in program for op in ops if isinstance(op, Store)]
    values += [v for v in registers.values() if v is not INITIAL] + list(variables.values())
    values.append(initial_value)
    return {
        "n_registers": max(regs, default=0) + 1,
        "n_values": max(values) + 1,
        "max_ops_per_core": max(len(ops) for ops in program),
    }


def format_operation(op: Operation, names: Sequence[str]) -> str:
    if isinstance(op, Load):
        return f"MOV {register_name(op.register)},[{names[op.variable]}]"
    return f"MOV [{names[op.variable]}],${op.value}"


def register_name(register: int) -> str:
    if register >= len(REGISTER_NAMES):
        raise ConfigError(f"register {register} has no x86 name (at most {len(REGISTER_NAMES)} per core)")
    return REGISTER_NAMES[register]


def format_spec(spec: FinalStateSpec, names: Sequence[str]) -> str:
    atoms = [f"{names[var]}={value}" for var, value in spec.variables.items()]
    atoms += [f"{core}:{register_name(reg)}={content}" for (core, reg), content in spec.registers.items()]
    return " /\\ ".join(atoms)


def format_state(state: MachineState, names: Sequence[str]) -> str:
    atoms = [f"{names[var]}={value}" for var, value in enumerate(state.variables)]
    atoms += [
        f"{core}:{register_name(reg)}={content}"
        for core, regs in enumerate(state.registers)
        for reg, content in enumerate(regs)
    ]
    return " /\\ ".join(atoms)


def emit_litmus(test: LitmusTest) -> str:
    names = test.variable_names
    config = test.config
    out = [f"X86 {test.name}"]
    inferred = _infer_sizes(test.program, test.condition.registers, test.condition.variables, config.initial_value)
    for key, attr in _SIZE_KEYS.items():
        if getattr(config, attr) != inferred[attr]:
            label = {"registers": "Registers", "values": "Values", "maxops": "MaxOps"}[key]
            out.append(f"{label}={getattr(config, attr)}")
    out.append("{ " + " ".join(f"{name}={config.initial_value};" for name in names) + " }")

    cells = [[f"P{core}"] + [format_operation(op, names) for op in ops] for core, ops in enumerate(test.program)]
    widths = [max(map(len, col)) for col in cells]
    rows = max(map(len, cells))
    for r in range(rows):
        row = [(col[r] if r < len(col) else "").ljust(w) for col, w in zip(cells, widths)]
        out.append(" " + " | ".join(row) + " ;")

    if test.expectation is not Expectation.UNKNOWN:
        keyword = "exists" if test.expectation is Expectation.ALLOWED else "~exists"
        out.append(f"{keyword} ({format_spec(test.condition, names)})")
    return "\n".join(out) + "\n"


# -- parameter files ---------------------------------------------------------

_PARAM_REQUIRED = ("cores", "registers", "variables", "values", "max_ops_per_core", "mcm")
_PARAM_OPTIONAL = (
    "initial_value",
    "final_registers",
    "final_variables",
    "include_programs",
    "exclude_programs",
    "values_exclude_initial",
    "distinct_ops_per_core",
)


def _parse_register_cell(key: str, n_cores: int) -> tuple[int, int]:
    m = re.fullmatch(rf"(\d+):({_REG})", key.strip(), re.IGNORECASE)
    if not m:
        raise ConfigError(f"register cell {key!r} must look like '0:EAX'")
    core = int(m.group(1))
    if core >= n_cores:
        raise ConfigError(f"register cell {key!r} names undeclared core")
    return core, REGISTER_NAMES.index(m.group(2).upper())


def _parse_program(raw, names: _Names, declared: int) -> Program:
    if not isinstance(raw, list) or not all(isinstance(ops, list) for ops in raw):
        raise ConfigError("a program must be a list of per-core instruction lists")
    try:
        program = Program([[parse_instruction(text, names) for text in ops] for ops in raw])
    except LitmusSyntaxError as exc:
        raise ConfigError(f"bad program instruction: {exc}") from exc
    if len(names.ids) > declared:
        raise ConfigError(f"program uses undeclared variable {names.names[-1]!r}")
    return program


def parse_param(text: str) -> GenerationConfig:
    """Read a JSON parameter file into a :class:`GenerationConfig`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"parameter file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("parameter file must be a JSON object")
    for key in _PARAM_REQUIRED:
        if key not in doc:
            raise ConfigError(f"missing mandatory key {key!r}")
    unknown = set(doc) - set(_PARAM_REQUIRED) - set(_PARAM_OPTIONAL)
    if unknown:
        raise ConfigError(f"unknown key(s): {', '.join(sorted(unknown))}")

    variables = doc["variables"]
    if isinstance(variables, int):
        variables = list(default_variable_names(variables))
    if not isinstance(variables, list) or not all(isinstance(v, str) and re.fullmatch(_LOC, v) for v in variables):
        raise ConfigError("'variables' must be a count or a list of lowercase identifiers")
    if len(set(variables)) != len(variables):
        raise ConfigError("duplicate variable names")
    names = _Names(variables)

    config = LitmusConfig(
        n_cores=doc["cores"],
        n_registers=doc["registers"],
        n_variables=len(variables),
        n_values=doc["values"],
        max_ops_per_core=doc["max_ops_per_core"],
        initial_value=doc.get("initial_value", 0),
    )
    mcm = MemoryModel.parse(str(doc["mcm"]))

    registers = {}
    for key, content in doc.get("final_registers", {}).items():
        if content == "INITIAL":
            content = INITIAL
        elif not isinstance(content, int):
            raise ConfigError(f"final value for {key} must be an integer or \"INITIAL\"")
        registers[_parse_register_cell(key, config.n_cores)] = content
    final_vars = {}
    for key, value in doc.get("final_variables", {}).items():
        if key not in names.ids:
            raise ConfigError(f"final_variables names undeclared variable {key!r}")
        if not isinstance(value, int):
            raise ConfigError(f"final value for {key} must be an integer")
        final_vars[names.ids[key]] = value
    spec = FinalStateSpec(registers, final_vars)

    include = [_parse_program(p, names, len(variables)) for p in doc.get("include_programs", [])]
    exclude = [_parse_program(p, names, len(variables)) for p in doc.get("exclude_programs", [])]
    try:
        return GenerationConfig(
            config=config,
            mcm=mcm,
            final_spec=spec,
            include_programs=frozenset(include),
            exclude_programs=frozenset(exclude),
            values_exclude_initial=bool(doc.get("values_exclude_initial", False)),
            distinct_ops_per_core=bool(doc.get("distinct_ops_per_core", False)),
            variable_names=tuple(variables),
        )
    except LitmusError as exc:
        raise ConfigError(str(exc)) from exc


def _spec_json(spec: FinalStateSpec, names: Sequence[str]) -> tuple[dict, dict]:
    regs = {
        f"{core}:{register_name(reg)}": ("INITIAL" if content is INITIAL else content)
        for (core, reg), content in spec.registers.items()
    }
    return regs, {names[var]: value for var, value in spec.variables.items()}


def _program_json(program: Program, names: Sequence[str]) -> list[list[str]]:
    return [[format_operation(op, names) for op in ops] for ops in program]


def emit_param(gen: GenerationConfig) -> str:
    names = gen.variable_names
    regs, vars_ = _spec_json(gen.final_spec, names)
    doc = {
        "cores": gen.config.n_cores,
        "registers": gen.config.n_registers,
        "variables": list(names),
        "values": gen.config.n_values,
        "max_ops_per_core": gen.config.max_ops_per_core,
        "initial_value": gen.config.initial_value,
        "mcm": gen.mcm.value,
        "final_registers": regs,
        "final_variables": vars_,
        "include_programs": [_program_json(p, names) for p in sorted(gen.include_programs, key=program_sort_key)],
        "exclude_programs": [_program_json(p, names) for p in sorted(gen.exclude_programs, key=program_sort_key)],
        "values_exclude_initial": gen.values_exclude_initial,
        "distinct_ops_per_core": gen.distinct_ops_per_core,
    }
    return json.dumps(doc, indent=2) + "\n"


# -- tests built from generated programs -------------------------------------


def program_name(program: Program, names: Sequence[str], prefix: str = "gen") -> str:
    """Stable content-derived name for a generated program."""
    text = "\n".join(" ; ".join(format_operation(op, names) for op in ops) for ops in program)
    return f"{prefix}-{hashlib.sha1(text.encode()).hexdigest()[:10]}"


def test_from_program(gen: GenerationConfig, program: Program, name: str | None = None) -> LitmusTest:
    return LitmusTest(
        name=name or program_name(program, gen.variable_names),
        config=gen.config,
        program=program,
        condition=gen.final_spec,
        expectation=Expectation.ALLOWED,
        variable_names=gen.variable_names,
    )


# -- reports -----------------------------------------------------------------


@dataclass
class CheckReport:
    test: LitmusTest
    mcm: MemoryModel
    witness: tuple[EventId, ...] | None
    show_witness: bool = False

    @property
    def reachable(self) -> bool:
        return self.witness is not None

    @property
    def confirmed(self) -> bool:
        if self.test.expectation is Expectation.ALLOWED:
            return self.reachable
        if self.test.expectation is Expectation.FORBIDDEN:
            return not self.reachable
        return True


@dataclass
class OutcomeReport:
    test: LitmusTest
    outcomes: OutcomeSet
    n_executions: int
    count_only: bool = False


@dataclass
class NamedGenerationReport:
    gen: GenerationConfig
    report: GenerationReport
    names: list[str] = field(default_factory=list)


@dataclass
class NamedComparisonReport:
    report: ComparisonReport
    variable_names: tuple[str, ...]
    source: str = ""


def format_execution(test: LitmusTest, execution: Iterable[EventId], final: MachineState) -> list[str]:
    """Two-column execution listing with the final state beneath a rule."""
    lines = [
        f"P{event.core} | {format_operation(operation_at(test.program, event), test.variable_names)}"
        for event in execution
    ]
    summary = format_state(final, test.variable_names)
    width = max([len(summary)] + [len(line) for line in lines])
    return lines + ["-" * width, summary]


def emit_report(report, fmt: str = "human") -> str:
    if fmt not in ("human", "structured"):
        raise ConfigError(f"unknown report format {fmt!r}")
    structured = fmt == "structured"
    if isinstance(report, CheckReport):
        text = _check_structured(report) if structured else _check_human(report)
    elif isinstance(report, OutcomeReport):
        text = _outcomes_structured(report) if structured else _outcomes_human(report)
    elif isinstance(report, NamedGenerationReport):
        text = _generation_structured(report) if structured else _generation_human(report)
    elif isinstance(report, NamedComparisonReport):
        text = _comparison_structured(report) if structured else _comparison_human(report)
    else:
        raise TypeError(f"cannot render {type(report).__name__}")
    return text if text.endswith("\n") else text + "\n"


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _witness_state(report: CheckReport) -> MachineState:
    return final_state(report.test.config, report.test.program, report.witness)


def _check_human(r: CheckReport) -> str:
    names = r.test.variable_names
    lines = [
        f"Test {r.test.name} under {r.mcm.value}",
        f"Condition: {format_spec(r.test.condition, names) or 'true'}",
        f"Result: {'reachable' if r.reachable else 'unreachable'}",
        f"Expectation: {r.test.expectation.value} ({'confirmed' if r.confirmed else 'VIOLATED'})",
    ]
    if r.show_witness:
        if r.reachable:
            lines.append("Witness:")
            lines += ["  " + line for line in format_execution(r.test, r.witness, _witness_state(r))]
        else:
            lines.append("Witness: none (no valid execution reaches the condition)")
    return "\n".join(lines)


def _check_structured(r: CheckReport) -> str:
    doc = {
        "test": r.test.name,
        "mcm": r.mcm.value,
        "expectation": r.test.expectation.value,
        "reachable": r.reachable,
        "confirmed": r.confirmed,
        "witness": [str(e) for e in r.witness] if r.witness else None,
    }
    if r.witness:
        doc["final_state"] = format_state(_witness_state(r), r.test.variable_names)
    return _dump(doc)


def _outcomes_human(r: OutcomeReport) -> str:
    lines = [f"Test {r.test.name}: {r.n_executions} valid executions, {len(r.outcomes)} distinct final states"]
    if r.count_only:
        return "\n".join(lines)
    if not len(r.outcomes):
        lines.append("  no valid execution")
    for state in r.outcomes:
        lines.append("  " + format_state(state, r.test.variable_names))
    return "\n".join(lines)


def _outcomes_structured(r: OutcomeReport) -> str:
    doc = {"test": r.test.name, "executions": r.n_executions, "final_states": len(r.outcomes)}
    if not r.count_only:
        doc["outcomes"] = [
            {"state": format_state(state, r.test.variable_names), "witness": [str(e) for e in witness]}
            for state, witness in r.outcomes.items()
        ]
    return _dump(doc)


def _generation_human(r: NamedGenerationReport) -> str:
    examined, accepted = r.report.counts
    spec = format_spec(r.gen.final_spec, r.gen.variable_names) or "true"
    lines = [
        f"Generation under {r.gen.mcm.value} for final state ({spec})",
        f"Examined {examined} candidate programs, accepted {accepted}",
    ]
    lines += [f"  {name}" for name in r.names]
    return "\n".join(lines)


def _generation_structured(r: NamedGenerationReport) -> str:
    examined, accepted = r.report.counts
    regs, vars_ = _spec_json(r.gen.final_spec, r.gen.variable_names)
    return _dump(
        {
            "mcm": r.gen.mcm.value,
            "final_registers": regs,
            "final_variables": vars_,
            "values_exclude_initial": r.gen.values_exclude_initial,
            "distinct_ops_per_core": r.gen.distinct_ops_per_core,
            "examined": examined,
            "accepted": accepted,
            "tests": r.names,
        }
    )


def _comparison_cells(r: NamedComparisonReport):
    report = r.report
    return (
        ("both", report.both),
        (f"{report.relaxed.value}-only", report.relaxed_only),
        ("neither", report.neither),
    )


def _comparison_human(r: NamedComparisonReport) -> str:
    report = r.report
    lines = [f"Strict {report.strict.value} vs relaxed {report.relaxed.value}: {report.total} programs"]
    if r.source:
        lines.append(f"Programs: {r.source}")
    for label, programs in _comparison_cells(r):
        lines.append(f"{label}: {len(programs)}")
        lines += [f"  {program_name(p, r.variable_names)}" for p in programs]
    return "\n".join(lines)


def _comparison_structured(r: NamedComparisonReport) -> str:
    report = r.report
    doc = {"strict": report.strict.value, "relaxed": report.relaxed.value, "total": report.total}
    for label, programs in _comparison_cells(r):
        doc[label] = {
            "count": len(programs),
            "programs": [
                {"name": program_name(p, r.variable_names), "code": _program_json(p, r.variable_names)}
                for p in programs
            ],
        }
    return _dump(doc)
