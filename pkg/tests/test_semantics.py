import pytest
from hypothesis import given
from hypothesis import strategies as st

from litmuskit import (
    INITIAL,
    EventId,
    ExecutionError,
    FinalStateSpec,
    LitmusConfig,
    Load,
    MachineState,
    MemoryModel,
    Store,
    StructuralError,
    apply,
    initial_state,
    matches,
    replay,
)
from litmuskit.engine import enumerate_executions
from litmuskit.semantics import final_state
from strategies import config_for, programs

P0S, P0L, P1S, P1L = EventId(0, 1), EventId(0, 2), EventId(1, 1), EventId(1, 2)


def test_initial_state_small():
    config = LitmusConfig(n_cores=2, n_registers=1, n_variables=1, n_values=1, max_ops_per_core=1)
    state = initial_state(config)
    assert state.registers == ((INITIAL,), (INITIAL,))
    assert state.variables == (0,)


def test_initial_state_sb(sb000a):
    config, _ = sb000a
    state = initial_state(config)
    assert all(c is INITIAL for row in state.registers for c in row)
    assert state.variable(0) == 0


def test_initial_state_honours_initial_value():
    config = LitmusConfig(1, 2, 3, 4, 1, initial_value=3)
    assert initial_state(config).variables == (3, 3, 3)


def test_store_updates_only_variable(sb000a):
    config, _ = sb000a
    s = initial_state(config)
    t = apply(s, 0, Store(0, 2))
    assert t.variables == (2,)
    assert t.registers == s.registers


def test_load_copies_variable():
    s = MachineState(((INITIAL,), (INITIAL,)), (2,))
    t = apply(s, 1, Load(0, 0))
    assert t.register(1, 0) == 2
    assert t.register(0, 0) is INITIAL
    assert t.variables == (2,)


def test_store_twice_idempotent(sb000a):
    config, _ = sb000a
    once = apply(initial_state(config), 0, Store(0, 1))
    assert apply(once, 1, Store(0, 1)) == once


def test_apply_rejects_bad_ids(sb000a):
    config, _ = sb000a
    s = initial_state(config)
    for core, op in ((2, Store(0, 1)), (0, Store(1, 1)), (0, Load(1, 0))):
        with pytest.raises(StructuralError):
            apply(s, core, op)


@pytest.mark.parametrize(
    "order, final",
    [
        ((P0S, P0L, P1S, P1L), (2, 1, 2)),  # first execution of Example 2
        ((P0S, P1S, P0L, P1L), (2, 2, 2)),  # second execution of Example 2
        ((P0S, P0L, P1L, P1S), (2, 1, 1)),  # TSO only
        ((P1S, P1L, P0S, P0L), (1, 1, 2)),
        ((P1S, P0S, P1L, P0L), (1, 1, 1)),
    ],
)
def test_replay_known_executions(sb000a, order, final):
    config, program = sb000a
    trace = replay(config, program, order)
    x, eax0, eax1 = final
    assert trace.final.variables == (x,)
    assert trace.final.registers == ((eax0,), (eax1,))
    assert len(trace.states) == 5
    assert trace.states[0] == initial_state(config)


@pytest.mark.parametrize(
    "order, message",
    [
        ((P0S, P0L, P1S), "missing"),
        ((P0S, P0L, P1S, P1S), "appears 2 times"),
        ((P0S, P0L, P1S, P1L, EventId(2, 1)), "unknown event"),
    ],
)
def test_replay_rejects_non_permutation(sb000a, order, message):
    config, program = sb000a
    with pytest.raises(ExecutionError, match=message):
        replay(config, program, order)


def test_matches(sb000a):
    config, program = sb000a
    final = replay(config, program, (P0S, P0L, P1S, P1L)).final
    assert matches(final, FinalStateSpec({(0, 0): 1, (1, 0): 2}, {0: 2}))
    assert matches(final, FinalStateSpec())
    assert not matches(final, FinalStateSpec({(0, 0): INITIAL}))
    assert not matches(final, FinalStateSpec({}, {0: 1}))


def test_matches_initial_sentinel(sb000a):
    config, _ = sb000a
    assert matches(initial_state(config), FinalStateSpec({(0, 0): INITIAL}))
    assert not matches(initial_state(config), FinalStateSpec({(0, 0): 0}))


def _diff(a: MachineState, b: MachineState):
    regs = {(c, r) for c, row in enumerate(a.registers) for r, v in enumerate(row) if b.registers[c][r] != v}
    vars_ = {v for v, x in enumerate(a.variables) if b.variables[v] != x}
    return regs, vars_


states = st.builds(
    lambda regs, vars_: MachineState(tuple(tuple(r) for r in regs), tuple(vars_)),
    st.lists(st.lists(st.one_of(st.just(INITIAL), st.integers(0, 2)), min_size=2, max_size=2), min_size=2, max_size=2),
    st.lists(st.integers(0, 2), min_size=2, max_size=2),
)


@given(states, st.integers(0, 1), st.integers(0, 1), st.integers(0, 2))
def test_store_frame(state, core, var, value):
    regs, vars_ = _diff(state, apply(state, core, Store(var, value)))
    assert not regs
    assert vars_ == (set() if state.variables[var] == value else {var})


@given(states, st.integers(0, 1), st.integers(0, 1), st.integers(0, 1))
def test_load_frame(state, core, reg, var):
    regs, vars_ = _diff(state, apply(state, core, Load(reg, var)))
    assert not vars_
    assert regs <= {(core, reg)}


@given(programs(n_cores=3, max_ops=2), st.data())
def test_trace_invariants(program, data):
    config = config_for(program)
    executions = list(enumerate_executions(config, program, data.draw(st.sampled_from(list(MemoryModel)))))
    execution = data.draw(st.sampled_from(executions))
    trace = replay(config, program, execution)
    assert len(trace.states) == len(execution) + 1
    assert trace == replay(config, program, execution)
    assert trace.final == final_state(config, program, execution)
    for before, event, after in zip(trace.states, trace.execution, trace.states[1:]):
        op = program.cores[event.core][event.index - 1]
        assert after == apply(before, event.core, op)
    # sentinel monotonicity: once loaded, a register never reads INITIAL again
    for c in range(config.n_cores):
        for r in range(config.n_registers):
            seen = [s.registers[c][r] is INITIAL for s in trace.states]
            assert seen == sorted(seen, reverse=True)
    assert all(v is not INITIAL for s in trace.states for v in s.variables)
