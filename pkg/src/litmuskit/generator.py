"""Exhaustive litmus-test generation and strict-vs-relaxed model comparison."""

from __future__ import annotations

import itertools
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .engine import check_allowed
from .model import (
    ConfigError,
    EventId,
    FinalStateSpec,
    GenerationConfig,
    LitmusConfig,
    Load,
    MemoryModel,
    Operation,
    Program,
    Store,
)
from .ordering import contains

CHUNK = 256


def operation_space(config: LitmusConfig, values_exclude_initial: bool = False) -> tuple[Operation, ...]:
    """Loads (register-major) followed by stores (variable-major), in id order."""
    loads = [Load(r, v) for r in range(config.n_registers) for v in range(config.n_variables)]
    values = [
        val
        for val in range(config.n_values)
        if not (values_exclude_initial and val == config.initial_value)
    ]
    stores = [Store(v, val) for v in range(config.n_variables) for val in values]
    return tuple(loads + stores)


def core_sequences(
    config: LitmusConfig,
    values_exclude_initial: bool = False,
    distinct_ops_per_core: bool = False,
) -> list[tuple[Operation, ...]]:
    ops = operation_space(config, values_exclude_initial)
    seqs = []
    for length in range(1, config.max_ops_per_core + 1):
        for seq in itertools.product(ops, repeat=length):
            if distinct_ops_per_core and len(set(seq)) != len(seq):
                continue
            seqs.append(seq)
    return seqs


def enumerate_programs(
    config: LitmusConfig,
    values_exclude_initial: bool = False,
    distinct_ops_per_core: bool = False,
) -> Iterator[Program]:
    """Every program within ``config``'s bounds, once each, in lexicographic order.

    Per-core sequences are ordered by length, then by position in
    :func:`operation_space`; programs by core 0's sequence first.
    """
    seqs = core_sequences(config, values_exclude_initial, distinct_ops_per_core)
    for cores in itertools.product(seqs, repeat=config.n_cores):
        yield Program(cores)


@dataclass
class GenerationReport:
    """Programs accepted by a generation run, in canonical order, with witnesses."""

    accepted: list[Program] = field(default_factory=list)
    witnesses: dict[Program, tuple[EventId, ...]] = field(default_factory=dict)
    examined: int = 0

    @property
    def counts(self) -> tuple[int, int]:
        return self.examined, len(self.accepted)


@dataclass
class ComparisonReport:
    strict: MemoryModel
    relaxed: MemoryModel
    both: list[Program] = field(default_factory=list)
    relaxed_only: list[Program] = field(default_factory=list)
    neither: list[Program] = field(default_factory=list)
    witnesses: dict[tuple[MemoryModel, Program], tuple[EventId, ...]] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return len(self.both) + len(self.relaxed_only) + len(self.neither)


def _check_chunk(args):
    config, mcm, spec, programs = args
    return [check_allowed(config, program, mcm, spec) for program in programs]


def _chunks(items: Iterable, size: int) -> Iterator[list]:
    it = iter(items)
    while chunk := list(itertools.islice(it, size)):
        yield chunk


def check_many(
    config: LitmusConfig,
    mcm: MemoryModel,
    spec: FinalStateSpec,
    programs: Iterable[Program],
    threads: int = 1,
) -> Iterator[tuple[Program, tuple[EventId, ...] | None]]:
    """``check_allowed`` over a stream of programs; results keep input order."""
    if threads <= 1:
        for program in programs:
            yield program, check_allowed(config, program, mcm, spec)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        # Bounded window of in-flight batches, drained in submission order.
        pending: deque = deque()
        for batch in _chunks(programs, CHUNK):
            pending.append((batch, pool.submit(_check_chunk, (config, mcm, spec, batch))))
            if len(pending) >= 4 * threads:
                batch, future = pending.popleft()
                yield from zip(batch, future.result())
        while pending:
            batch, future = pending.popleft()
            yield from zip(batch, future.result())


def _candidates(gen: GenerationConfig) -> Iterator[Program]:
    if gen.include_programs:
        # Sorting by position in the enumeration keeps reports reproducible.
        source = sorted(gen.include_programs, key=lambda p: program_sort_key(p))
    else:
        source = enumerate_programs(gen.config, gen.values_exclude_initial, gen.distinct_ops_per_core)
    for program in source:
        if program in gen.exclude_programs:
            continue
        yield program


def generate(gen: GenerationConfig, threads: int = 1) -> GenerationReport:
    """Programs with a valid execution (under ``gen.mcm``) reaching ``gen.final_spec``."""
    report = GenerationReport()
    for program, witness in check_many(gen.config, gen.mcm, gen.final_spec, _candidates(gen), threads):
        report.examined += 1
        if witness is not None:
            report.accepted.append(program)
            report.witnesses[program] = witness
    return report


def compare_models(
    config: LitmusConfig,
    programs: Iterable[Program],
    strict: MemoryModel,
    relaxed: MemoryModel,
    final_spec: FinalStateSpec,
    threads: int = 1,
) -> ComparisonReport:
    """Partition ``programs`` by which of the two models reach ``final_spec``."""
    if not contains(strict, relaxed):
        raise ConfigError(f"{strict.value} is not stricter than {relaxed.value}")
    programs = sorted(set(programs), key=lambda p: program_sort_key(p))
    report = ComparisonReport(strict, relaxed)
    relaxed_ok = dict(check_many(config, relaxed, final_spec, programs, threads))
    strict_ok = dict(check_many(config, strict, final_spec, programs, threads))
    for program in programs:
        if strict_ok[program] is not None:
            if relaxed_ok[program] is None:
                raise AssertionError(f"{strict.value} witness without {relaxed.value} witness")
            report.both.append(program)
        elif relaxed_ok[program] is not None:
            report.relaxed_only.append(program)
        else:
            report.neither.append(program)
        for mcm, found in ((strict, strict_ok[program]), (relaxed, relaxed_ok[program])):
            if found is not None:
                report.witnesses[mcm, program] = found
    return report


def program_sort_key(program: Program) -> tuple:
    """Position-compatible key for :func:`enumerate_programs` ordering."""

    def op_key(op: Operation):
        if isinstance(op, Load):
            return (0, op.register, op.variable)
        return (1, op.variable, op.value)

    return tuple((len(ops), tuple(op_key(op) for op in ops)) for ops in program.cores)
