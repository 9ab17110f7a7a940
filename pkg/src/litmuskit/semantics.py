"""Deterministic machine-state transitions: initialization, single steps, replay."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .model import (
    INITIAL,
    EventId,
    ExecutionError,
    FinalStateSpec,
    LitmusConfig,
    Load,
    MachineState,
    Operation,
    Program,
    StructuralError,
    events_of,
    operation_at,
)


@dataclass(frozen=True)
class Trace:
    """Every intermediate state of one execution; ``len(states) == len(execution) + 1``."""

    states: tuple[MachineState, ...]
    execution: tuple[EventId, ...]

    @property
    def final(self) -> MachineState:
        return self.states[-1]


def initial_state(config: LitmusConfig) -> MachineState:
    return MachineState(
        registers=tuple((INITIAL,) * config.n_registers for _ in range(config.n_cores)),
        variables=(config.initial_value,) * config.n_variables,
    )


def apply(state: MachineState, core: int, op: Operation) -> MachineState:
    """Return the state after ``core`` performs ``op``; ``state`` is left untouched."""
    if not 0 <= core < len(state.registers):
        raise StructuralError(f"core {core} out of range")
    if not 0 <= op.variable < len(state.variables):
        raise StructuralError(f"variable {op.variable} out of range")
    if isinstance(op, Load):
        regs = state.registers[core]
        if not 0 <= op.register < len(regs):
            raise StructuralError(f"register {op.register} out of range")
        new_regs = regs[: op.register] + (state.variables[op.variable],) + regs[op.register + 1 :]
        registers = state.registers[:core] + (new_regs,) + state.registers[core + 1 :]
        return MachineState(registers, state.variables)
    if op.value is INITIAL or op.value < 0:
        raise StructuralError(f"cannot store {op.value!r}")
    variables = state.variables[: op.variable] + (op.value,) + state.variables[op.variable + 1 :]
    return MachineState(state.registers, variables)


def check_permutation(program: Program, execution) -> None:
    """Raise :class:`ExecutionError` unless ``execution`` lists every event exactly once."""
    expected = set(events_of(program))
    seen = Counter(EventId(*e) for e in execution)
    for event, count in sorted(seen.items()):
        if event not in expected:
            raise ExecutionError(f"execution contains unknown event {event}")
        if count > 1:
            raise ExecutionError(f"event {event} appears {count} times in execution")
    missing = sorted(expected - seen.keys())
    if missing:
        raise ExecutionError(f"event {missing[0]} missing from execution")


def replay(config: LitmusConfig, program: Program, execution) -> Trace:
    check_permutation(program, execution)
    execution = tuple(EventId(*e) for e in execution)
    states = [initial_state(config)]
    for event in execution:
        states.append(apply(states[-1], event.core, operation_at(program, event)))
    return Trace(tuple(states), execution)


def final_state(config: LitmusConfig, program: Program, execution) -> MachineState:
    """Final state of ``execution`` without materializing the intermediate states.

    No permutation check: callers pass executions produced by the engine.
    """
    registers = [[INITIAL] * config.n_registers for _ in range(config.n_cores)]
    variables = [config.initial_value] * config.n_variables
    for core, index in execution:
        op = program.cores[core][index - 1]
        if isinstance(op, Load):
            registers[core][op.register] = variables[op.variable]
        else:
            variables[op.variable] = op.value
    return MachineState(tuple(map(tuple, registers)), tuple(variables))


def matches(state: MachineState, spec: FinalStateSpec) -> bool:
    for (core, reg), content in spec.registers.items():
        if state.registers[core][reg] != content:
            return False
    for var, value in spec.variables.items():
        if state.variables[var] != value:
            return False
    return True
