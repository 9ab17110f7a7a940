"""Domain types shared by the semantics, search engine, generator and I/O layers.

Cores, registers, variables and values are dense integer ids.  A value is an
index into a finite universe ``0..n_values-1`` where ``0`` is conventionally the
initial content of every variable.  Registers additionally start out holding
the :data:`INITIAL` sentinel, which no operation can ever produce.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Mapping, NamedTuple, Sequence, Union


class LitmusError(Exception):
    """Base class for every error raised by this package."""


class StructuralError(LitmusError, ValueError):
    """An id or event is out of range for the program or configuration."""


class ConfigError(LitmusError, ValueError):
    """A configuration, specification or model pairing is ill-formed."""


class ExecutionError(LitmusError, ValueError):
    """A sequence of events is not a permutation of a program's events."""


class _Initial(enum.Enum):
    INITIAL = "INITIAL"

    def __repr__(self) -> str:
        return "INITIAL"

    def __str__(self) -> str:
        return "INITIAL"


INITIAL = _Initial.INITIAL
"""Content of a register that has never been loaded into."""

Value = int
RegisterContent = Union[int, _Initial]


def content_key(content: RegisterContent) -> int:
    """Sort key placing INITIAL before every value."""
    return -1 if content is INITIAL else content


class MemoryModel(enum.Enum):
    SC = "SC"
    TSO = "TSO"

    @classmethod
    def parse(cls, tag: str) -> "MemoryModel":
        try:
            return cls(tag.strip().upper())
        except ValueError:
            raise ConfigError(f"unknown memory model {tag!r} (expected SC or TSO)") from None


class Expectation(enum.Enum):
    ALLOWED = "Allowed"
    FORBIDDEN = "Forbidden"
    UNKNOWN = "Unknown"


@dataclass(frozen=True, slots=True)
class Load:
    """``register <- [variable]`` on the issuing core."""

    register: int
    variable: int

    is_store = False


@dataclass(frozen=True, slots=True)
class Store:
    """``[variable] <- value``."""

    variable: int
    value: Value

    is_store = True


Operation = Union[Load, Store]


class EventId(NamedTuple):
    """An operation instance: core id and 1-based position in that core's code."""

    core: int
    index: int

    def __str__(self) -> str:
        return f"P{self.core}.{self.index}"


Execution = tuple  # tuple[EventId, ...]


@dataclass(frozen=True, slots=True)
class Program:
    """Per-core operation sequences; equality and hashing are structural."""

    cores: tuple[tuple[Operation, ...], ...]

    def __init__(self, cores: Sequence[Sequence[Operation]]):
        object.__setattr__(self, "cores", tuple(tuple(ops) for ops in cores))

    def __len__(self) -> int:
        return len(self.cores)

    def __getitem__(self, core: int) -> tuple[Operation, ...]:
        return self.cores[core]

    def __iter__(self) -> Iterator[tuple[Operation, ...]]:
        return iter(self.cores)

    @property
    def n_cores(self) -> int:
        return len(self.cores)

    @property
    def total_ops(self) -> int:
        return sum(len(ops) for ops in self.cores)

    def lengths(self) -> tuple[int, ...]:
        return tuple(len(ops) for ops in self.cores)


def events_of(program: Program) -> tuple[EventId, ...]:
    """Every event of ``program`` ordered by (core, index)."""
    return tuple(
        EventId(core, index)
        for core, ops in enumerate(program.cores)
        for index in range(1, len(ops) + 1)
    )


def operation_at(program: Program, event: EventId) -> Operation:
    core, index = event
    if not 0 <= core < program.n_cores:
        raise StructuralError(f"event {event}: core {core} out of range (program has {program.n_cores} cores)")
    ops = program.cores[core]
    if not 1 <= index <= len(ops):
        raise StructuralError(f"event {event}: index {index} out of range for core {core} ({len(ops)} operations)")
    return ops[index - 1]


@dataclass(frozen=True)
class LitmusConfig:
    n_cores: int
    n_registers: int
    n_variables: int
    n_values: int
    max_ops_per_core: int
    initial_value: Value = 0

    def __post_init__(self):
        for name in ("n_cores", "n_registers", "n_variables", "n_values", "max_ops_per_core"):
            count = getattr(self, name)
            if not isinstance(count, int) or count < 1:
                raise ConfigError(f"{name} must be a positive integer, got {count!r}")
        if not 0 <= self.initial_value < self.n_values:
            raise ConfigError(f"initial_value {self.initial_value} outside value universe 0..{self.n_values - 1}")

    def check_operation(self, op: Operation, core: int | None = None) -> None:
        if isinstance(op, Load):
            if not 0 <= op.register < self.n_registers:
                raise StructuralError(f"register {op.register} out of range (n_registers={self.n_registers})")
            variable = op.variable
        elif isinstance(op, Store):
            if not 0 <= op.value < self.n_values:
                raise StructuralError(f"value {op.value} out of range (n_values={self.n_values})")
            variable = op.variable
        else:
            raise StructuralError(f"not an operation: {op!r}")
        if not 0 <= variable < self.n_variables:
            raise StructuralError(f"variable {variable} out of range (n_variables={self.n_variables})")
        if core is not None and not 0 <= core < self.n_cores:
            raise StructuralError(f"core {core} out of range (n_cores={self.n_cores})")

    def check_program(self, program: Program) -> None:
        if program.n_cores != self.n_cores:
            raise StructuralError(f"program has {program.n_cores} cores, configuration declares {self.n_cores}")
        for core, ops in enumerate(program.cores):
            if not 1 <= len(ops) <= self.max_ops_per_core:
                raise StructuralError(
                    f"core {core} has {len(ops)} operations, expected 1..{self.max_ops_per_core}"
                )
            for op in ops:
                self.check_operation(op, core)


@dataclass(frozen=True)
class MachineState:
    """Register file and variable store at one step.

    ``registers[core][register]`` and ``variables[variable]``; both are dense
    tuples so that states hash and compare cheaply.
    """

    registers: tuple[tuple[RegisterContent, ...], ...]
    variables: tuple[Value, ...]

    def register(self, core: int, register: int) -> RegisterContent:
        return self.registers[core][register]

    def variable(self, variable: int) -> Value:
        return self.variables[variable]

    def canonical(self) -> tuple:
        """Fixed-order key: all register cells (core-major), then all variable cells."""
        return tuple(content_key(c) for regs in self.registers for c in regs) + self.variables


@dataclass(frozen=True)
class FinalStateSpec:
    """Partial constraint on a final state; unmentioned cells are unconstrained."""

    registers: Mapping[tuple[int, int], RegisterContent] = field(default_factory=dict)
    variables: Mapping[int, Value] = field(default_factory=dict)

    def __post_init__(self):
        # Copy into plain dicts so callers cannot mutate a spec after the fact.
        object.__setattr__(self, "registers", dict(sorted(self.registers.items())))
        object.__setattr__(self, "variables", dict(sorted(self.variables.items())))
        for cell, value in self.variables.items():
            if value is INITIAL:
                raise ConfigError(f"variable {cell} cannot be required to hold INITIAL")

    def is_empty(self) -> bool:
        return not self.registers and not self.variables

    def check(self, config: LitmusConfig) -> None:
        for (core, reg), content in self.registers.items():
            if not 0 <= core < config.n_cores or not 0 <= reg < config.n_registers:
                raise ConfigError(f"final-state spec names undeclared register {core}:{reg}")
            if content is not INITIAL and not 0 <= content < config.n_values:
                raise ConfigError(f"final-state spec value {content} for {core}:{reg} outside value universe")
        for var, value in self.variables.items():
            if not 0 <= var < config.n_variables:
                raise ConfigError(f"final-state spec names undeclared variable {var}")
            if not 0 <= value < config.n_values:
                raise ConfigError(f"final-state spec value {value} for variable {var} outside value universe")


REGISTER_NAMES = ("EAX", "EBX", "ECX", "EDX")


def default_variable_names(n: int) -> tuple[str, ...]:
    base = ("x", "y", "z", "w")
    if n <= len(base):
        return base[:n]
    return tuple(f"v{i}" for i in range(n))


@dataclass(frozen=True)
class LitmusTest:
    name: str
    config: LitmusConfig
    program: Program
    condition: FinalStateSpec = field(default_factory=FinalStateSpec)
    expectation: Expectation = Expectation.UNKNOWN
    variable_names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.variable_names:
            object.__setattr__(self, "variable_names", default_variable_names(self.config.n_variables))
        if len(self.variable_names) != self.config.n_variables:
            raise ConfigError(
                f"{len(self.variable_names)} variable names for {self.config.n_variables} variables"
            )
        self.config.check_program(self.program)
        self.condition.check(self.config)


@dataclass(frozen=True)
class GenerationConfig:
    """Parameters of an exhaustive generation run.

    ``values_exclude_initial`` drops stores of the initial variable value from
    the operation space.  ``distinct_ops_per_core`` rejects candidate programs
    in which a core repeats a syntactically identical operation; with it set,
    the scenario counts of the original constraint model are reproduced.
    """

    config: LitmusConfig
    mcm: MemoryModel
    final_spec: FinalStateSpec = field(default_factory=FinalStateSpec)
    include_programs: frozenset = frozenset()
    exclude_programs: frozenset = frozenset()
    values_exclude_initial: bool = False
    distinct_ops_per_core: bool = False
    variable_names: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "include_programs", frozenset(self.include_programs))
        object.__setattr__(self, "exclude_programs", frozenset(self.exclude_programs))
        if not self.variable_names:
            object.__setattr__(self, "variable_names", default_variable_names(self.config.n_variables))
        self.final_spec.check(self.config)
        for program in self.include_programs | self.exclude_programs:
            self.config.check_program(program)
