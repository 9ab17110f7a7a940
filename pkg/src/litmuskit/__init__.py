"""Litmus-test simulation, outcome enumeration and generation under SC and TSO."""

from .engine import (
    OracleRefusal,
    OutcomeSet,
    check_allowed,
    count_executions,
    count_stats,
    enumerate_executions,
    oracle_executions,
    reachable_final_states,
)
from .generator import (
    ComparisonReport,
    GenerationReport,
    compare_models,
    core_sequences,
    enumerate_programs,
    generate,
    operation_space,
)
from .litmus_io import (
    LitmusSyntaxError,
    emit_litmus,
    emit_param,
    emit_report,
    format_execution,
    format_state,
    parse_litmus,
    parse_param,
    test_from_program,
)
from .model import (
    INITIAL,
    ConfigError,
    EventId,
    ExecutionError,
    Expectation,
    FinalStateSpec,
    GenerationConfig,
    LitmusConfig,
    LitmusError,
    LitmusTest,
    Load,
    MachineState,
    MemoryModel,
    Program,
    Store,
    StructuralError,
    events_of,
    operation_at,
)
from .ordering import core_partial_order, is_valid_execution, preserved, violation
from .semantics import Trace, apply, initial_state, matches, replay

__version__ = "0.1.0"
