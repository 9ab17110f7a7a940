"""Valid-execution enumeration, outcome sets, witness search and the brute-force oracle.

Valid executions are the linear extensions of the per-core partial orders
chosen by a memory model.  The search walks *frontiers*: per core, a bitmask
of already-emitted positions that is always downward closed in that core's
partial order.  At every choice point the extendable events are tried in
(core, index) order, so every stream and every retained witness is
reproducible.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator

from .model import (
    INITIAL,
    EventId,
    FinalStateSpec,
    LitmusConfig,
    LitmusError,
    Load,
    MachineState,
    MemoryModel,
    Program,
    events_of,
)
from .ordering import is_valid_execution, predecessor_masks

ORACLE_LIMIT = 9


class OracleRefusal(LitmusError):
    """The brute-force oracle was asked to permute too many events."""


class OutcomeSet:
    """Distinct final states, each with the first witness execution found for it."""

    def __init__(self):
        self._entries: dict[tuple, tuple[MachineState, tuple[EventId, ...]]] = {}

    def add(self, state: MachineState, witness) -> bool:
        key = state.canonical()
        if key in self._entries:
            return False
        self._entries[key] = (state, tuple(witness))
        return True

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, state: MachineState) -> bool:
        return state.canonical() in self._entries

    def __iter__(self) -> Iterator[MachineState]:
        for key in sorted(self._entries):
            yield self._entries[key][0]

    def items(self) -> list[tuple[MachineState, tuple[EventId, ...]]]:
        return [self._entries[key] for key in sorted(self._entries)]

    def witness(self, state: MachineState) -> tuple[EventId, ...]:
        return self._entries[state.canonical()][1]

    def states(self) -> frozenset[MachineState]:
        return frozenset(entry[0] for entry in self._entries.values())

    def issubset(self, other: "OutcomeSet") -> bool:
        return self._entries.keys() <= other._entries.keys()

    def __eq__(self, other) -> bool:
        if not isinstance(other, OutcomeSet):
            return NotImplemented
        return self._entries.keys() == other._entries.keys()

    def __repr__(self) -> str:
        return f"OutcomeSet({len(self)} states)"


class _Search:
    """Precomputed, flattened view of one program under one model."""

    def __init__(self, config: LitmusConfig, program: Program, mcm: MemoryModel):
        config.check_program(program)
        self.config = config
        self.program = program
        self.n_cores = program.n_cores
        self.n_registers = config.n_registers
        self.preds = predecessor_masks(mcm, program)
        self.full = tuple((1 << len(ops)) - 1 for ops in program.cores)
        # (is_load, register cell or variable, variable or value) per core/position
        self.steps = tuple(
            tuple(
                (True, core * config.n_registers + op.register, op.variable)
                if isinstance(op, Load)
                else (False, op.variable, op.value)
                for op in ops
            )
            for core, ops in enumerate(program.cores)
        )
        self.start = (
            (0,) * self.n_cores,
            (INITIAL,) * (config.n_cores * config.n_registers),
            (config.initial_value,) * config.n_variables,
        )

    def choices(self, done: tuple[int, ...]):
        for core in range(self.n_cores):
            mask = done[core]
            for pos, pred in enumerate(self.preds[core]):
                bit = 1 << pos
                if not mask & bit and pred & mask == pred:
                    yield core, pos

    def step(self, done, regs, vars_, core, pos):
        is_load, a, b = self.steps[core][pos]
        done = done[:core] + (done[core] | (1 << pos),) + done[core + 1 :]
        if is_load:
            regs = regs[:a] + (vars_[b],) + regs[a + 1 :]
        else:
            vars_ = vars_[:a] + (b,) + vars_[a + 1 :]
        return done, regs, vars_

    def is_complete(self, done) -> bool:
        return done == self.full

    def state(self, regs, vars_) -> MachineState:
        n = self.n_registers
        return MachineState(tuple(regs[c * n : (c + 1) * n] for c in range(self.n_cores)), vars_)


def enumerate_executions(config: LitmusConfig, program: Program, mcm: MemoryModel) -> Iterator[tuple[EventId, ...]]:
    """Yield every valid execution exactly once, in (core, index)-first DFS order."""
    search = _Search(config, program, mcm)
    path: list[EventId] = []

    def walk(done):
        if search.is_complete(done):
            yield tuple(path)
            return
        for core, pos in list(search.choices(done)):
            path.append(EventId(core, pos + 1))
            yield from walk(done[:core] + (done[core] | (1 << pos),) + done[core + 1 :])
            path.pop()

    yield from walk(search.start[0])


def oracle_executions(config: LitmusConfig, program: Program, mcm: MemoryModel) -> set[tuple[EventId, ...]]:
    """All permutations of the program's events, filtered by the validity predicate."""
    config.check_program(program)
    events = events_of(program)
    if len(events) > ORACLE_LIMIT:
        raise OracleRefusal(f"refusing to permute {len(events)} events (limit {ORACLE_LIMIT})")
    return {perm for perm in itertools.permutations(events) if is_valid_execution(mcm, program, perm)}


def count_executions(config: LitmusConfig, program: Program, mcm: MemoryModel) -> int:
    """Number of valid executions, by dynamic programming over frontiers."""
    search = _Search(config, program, mcm)
    memo: dict[tuple[int, ...], int] = {}

    def count(done):
        if search.is_complete(done):
            return 1
        if done in memo:
            return memo[done]
        total = sum(
            count(done[:core] + (done[core] | (1 << pos),) + done[core + 1 :])
            for core, pos in search.choices(done)
        )
        memo[done] = total
        return total

    return count(search.start[0])


def _explore(search: _Search, prefix, memoize: bool):
    """DFS below ``prefix``; returns (state, witness) pairs in first-found order."""
    done, regs, vars_ = search.start
    path = []
    for core, pos in prefix:
        done, regs, vars_ = search.step(done, regs, vars_, core, pos)
        path.append(EventId(core, pos + 1))
    found: dict[tuple, tuple[MachineState, tuple[EventId, ...]]] = {}
    seen: set = set()

    def walk(done, regs, vars_):
        if memoize:
            key = (done, regs, vars_)
            if key in seen:
                return
            seen.add(key)
        if search.is_complete(done):
            state = search.state(regs, vars_)
            found.setdefault(state.canonical(), (state, tuple(path)))
            return
        for core, pos in list(search.choices(done)):
            path.append(EventId(core, pos + 1))
            walk(*search.step(done, regs, vars_, core, pos))
            path.pop()

    walk(done, regs, vars_)
    return list(found.values())


def _explore_branch(args):
    config, program, mcm, first, memoize = args
    return _explore(_Search(config, program, mcm), [first], memoize)


def reachable_final_states(
    config: LitmusConfig,
    program: Program,
    mcm: MemoryModel,
    *,
    memoize: bool = True,
    threads: int = 1,
) -> OutcomeSet:
    """Every distinct final state of a valid execution, each with one witness.

    The retained witness is the first valid execution reaching that state in
    enumeration order, independent of ``memoize`` and ``threads``.
    """
    search = _Search(config, program, mcm)
    outcomes = OutcomeSet()
    if threads <= 1:
        for state, witness in _explore(search, [], memoize):
            outcomes.add(state, witness)
        return outcomes
    firsts = list(search.choices(search.start[0]))
    jobs = [(config, program, mcm, first, memoize) for first in firsts]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for branch in pool.map(_explore_branch, jobs):
            for state, witness in branch:
                outcomes.add(state, witness)
    return outcomes


def _settled_cells(search: _Search, spec: FinalStateSpec):
    """Per spec cell, per-core masks of the operations that can still write it.

    Once every such operation is emitted the cell holds its final content, so a
    mismatch there prunes the whole subtree.
    """
    checks = []
    n = search.n_registers
    for (core, reg), want in spec.registers.items():
        masks = [0] * search.n_cores
        for pos, (is_load, cell, _) in enumerate(search.steps[core]):
            if is_load and cell == core * n + reg:
                masks[core] |= 1 << pos
        checks.append((True, core * n + reg, want, tuple(masks)))
    for var, want in spec.variables.items():
        masks = [0] * search.n_cores
        for core, steps in enumerate(search.steps):
            for pos, (is_load, target, _) in enumerate(steps):
                if not is_load and target == var:
                    masks[core] |= 1 << pos
        checks.append((False, var, want, tuple(masks)))
    return checks


def check_allowed(
    config: LitmusConfig,
    program: Program,
    mcm: MemoryModel,
    spec: FinalStateSpec,
    *,
    memoize: bool = True,
) -> tuple[EventId, ...] | None:
    """A valid execution whose final state matches ``spec``, or ``None``."""
    spec.check(config)
    search = _Search(config, program, mcm)
    checks = _settled_cells(search, spec)
    failed: set = set()
    path: list[EventId] = []

    def doomed(done, regs, vars_) -> bool:
        for is_reg, cell, want, masks in checks:
            if all(done[c] & m == m for c, m in enumerate(masks)):
                have = regs[cell] if is_reg else vars_[cell]
                if have != want:
                    return True
        return False

    def walk(done, regs, vars_) -> bool:
        key = (done, regs, vars_)
        if memoize and key in failed:
            return False
        if doomed(done, regs, vars_):
            return False
        if search.is_complete(done):
            return True
        for core, pos in list(search.choices(done)):
            path.append(EventId(core, pos + 1))
            if walk(*search.step(done, regs, vars_, core, pos)):
                return True
            path.pop()
        if memoize:
            failed.add(key)
        return False

    if walk(*search.start):
        return tuple(path)
    return None


def count_stats(config: LitmusConfig, program: Program, mcm: MemoryModel) -> tuple[int, int]:
    """(number of valid executions, number of distinct final states)."""
    return count_executions(config, program, mcm), len(reachable_final_states(config, program, mcm))
