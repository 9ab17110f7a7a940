"""Per-model ordering policies and the per-core partial orders they induce.

A policy decides, for two operations of the same core with ``a`` before ``b``
in program order, whether memory order must keep ``a`` before ``b``.  SC keeps
every pair; TSO drops only store-then-load pairs.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .model import EventId, Load, MemoryModel, Operation, Program, Store, events_of

Policy = Callable[[Operation, Operation], bool]


def _sc(first: Operation, second: Operation) -> bool:
    return True


def _tso(first: Operation, second: Operation) -> bool:
    return not (first.is_store and not second.is_store)


POLICIES: dict[MemoryModel, Policy] = {
    MemoryModel.SC: _sc,
    MemoryModel.TSO: _tso,
}


def preserved(mcm: MemoryModel, first: Operation, second: Operation) -> bool:
    return POLICIES[mcm](first, second)


def transitive_closure(pairs: set[tuple[int, int]], n: int) -> set[tuple[int, int]]:
    closed = set(pairs)
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            if (i, k) not in closed:
                continue
            for j in range(1, n + 1):
                if (k, j) in closed:
                    closed.add((i, j))
    return closed


def core_partial_order(mcm: MemoryModel, ops: Sequence[Operation]) -> frozenset[tuple[int, int]]:
    """Pairs ``(i, j)`` of 1-based indices, ``i < j``, whose order must be kept."""
    n = len(ops)
    pairs = {
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if preserved(mcm, ops[i - 1], ops[j - 1])
    }
    closed = transitive_closure(pairs, n)
    if closed != pairs:
        raise AssertionError(f"{mcm.value} policy is not transitively closed on {list(ops)}")
    return frozenset(pairs)


def predecessor_masks(mcm: MemoryModel, program: Program) -> tuple[tuple[int, ...], ...]:
    """Per core, per 0-based position, a bitmask of positions that must come first."""
    masks = []
    for ops in program.cores:
        order = core_partial_order(mcm, ops)
        row = [0] * len(ops)
        for i, j in order:
            row[j - 1] |= 1 << (i - 1)
        masks.append(tuple(row))
    return tuple(masks)


def violation(mcm: MemoryModel, program: Program, execution) -> str | None:
    """Describe why ``execution`` is not valid, or ``None`` when it is."""
    expected = events_of(program)
    execution = tuple(execution)
    position: dict[EventId, int] = {}
    for pos, event in enumerate(execution):
        try:
            event = EventId(*event)
        except TypeError:
            return f"malformed event {event!r}"
        if event in position:
            return f"event {event} appears more than once"
        position[event] = pos
    if len(execution) != len(expected):
        return f"execution has {len(execution)} events, program has {len(expected)}"
    for event in expected:
        if event not in position:
            return f"event {event} missing from execution"
    for core, ops in enumerate(program.cores):
        for i, j in sorted(core_partial_order(mcm, ops)):
            if position[EventId(core, i)] > position[EventId(core, j)]:
                return f"{mcm.value} requires {EventId(core, i)} before {EventId(core, j)}"
    return None


def is_valid_execution(mcm: MemoryModel, program: Program, execution) -> bool:
    return violation(mcm, program, execution) is None


def contains(strict: MemoryModel, relaxed: MemoryModel) -> bool:
    """True when every pair ``relaxed`` preserves is also preserved by ``strict``."""
    # Policies look only at operation kinds, so one load and one store cover every case.
    samples = (Load(0, 0), Store(0, 0))
    return all(
        preserved(strict, a, b) or not preserved(relaxed, a, b)
        for a in samples
        for b in samples
    )
