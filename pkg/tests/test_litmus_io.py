import json

import pytest

from litmuskit import (
    INITIAL,
    ConfigError,
    EventId,
    Expectation,
    FinalStateSpec,
    LitmusConfig,
    LitmusSyntaxError,
    LitmusTest,
    Load,
    MemoryModel,
    Program,
    Store,
    emit_litmus,
    emit_param,
    emit_report,
    parse_litmus,
    parse_param,
    reachable_final_states,
    replay,
)
from litmuskit.litmus_io import CheckReport, OutcomeReport, format_execution
from litmuskit.litmus_io import test_from_program as make_test
from litmuskit.engine import OutcomeSet, count_executions
from conftest import DATA, corpus_paths, load_litmus, load_param

SB000A_TEXT = """X86 SB000a
{ x=0; }
 P0          | P1          ;
 MOV [x],$1  | MOV [x],$2  ;
 MOV EAX,[x] | MOV EAX,[x] ;
exists (x=2 /\\ 0:EAX=1 /\\ 1:EAX=2)
"""

DIY_STYLE = """X86 SB
"Fre PodWR Fre PodWR"
Generator=diy7 (version 7.56)
Cycle=Fre PodWR Fre PodWR
Orig=Fre PodWR Fre PodWR
{
}
 P0          | P1          ;
 MOV [x],$1  | MOV [y],$1  ;
 MOV EAX,[y] | MOV EAX,[x] ;
(* a comment *)
exists
(0:EAX=0 /\\ 1:EAX=0)
"""


def test_parse_sb000a():
    test = parse_litmus(SB000A_TEXT)
    assert test.name == "SB000a"
    assert test.program == Program([[Store(0, 1), Load(0, 0)], [Store(0, 2), Load(0, 0)]])
    assert test.condition == FinalStateSpec({(0, 0): 1, (1, 0): 2}, {0: 2})
    assert test.expectation is Expectation.ALLOWED
    assert test.config == LitmusConfig(n_cores=2, n_registers=1, n_variables=1, n_values=3, max_ops_per_core=2)


def test_parse_forbidden():
    test = parse_litmus(SB000A_TEXT.replace("exists", "~exists"))
    assert test.expectation is Expectation.FORBIDDEN


def test_parse_diy_style():
    test = parse_litmus(DIY_STYLE)
    assert test.variable_names == ("x", "y")
    assert test.program == Program([[Store(0, 1), Load(0, 1)], [Store(1, 1), Load(0, 0)]])
    assert test.condition.registers == {(0, 0): 0, (1, 0): 0}


def test_parse_without_condition_is_unknown():
    text = "\n".join(SB000A_TEXT.splitlines()[:-1]) + "\n"
    test = parse_litmus(text)
    assert test.expectation is Expectation.UNKNOWN and test.condition.is_empty()
    assert emit_litmus(test) == text


def test_parse_dollar_optional_and_brackets_in_condition():
    text = SB000A_TEXT.replace("$1", "1").replace("x=2 /\\", "[x]=2 /\\")
    assert parse_litmus(text) == parse_litmus(SB000A_TEXT)


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda t: t.replace(" MOV [x],$2  ;", "             ;").replace(" MOV EAX,[x] | MOV EAX,[x] ;", " MOV EAX,[x] |             ;"), "P1 has no instructions"),
        (lambda t: t.replace("MOV [x],$2 ", "MFENCE     "), "unsupported instruction 'MFENCE'"),
        (lambda t: t.replace("0:EAX=1", "0:EAX=1 \\/ 0:EAX=2"), "disjunction"),
        (lambda t: t.replace("x=2 /\\", "z=2 /\\"), "undeclared variable 'z'"),
        (lambda t: t.replace("0:EAX=1", "0:ESI=1"), "undeclared register"),
        (lambda t: t.replace("1:EAX=2", "2:EAX=2"), "undeclared core"),
        (lambda t: t.replace("X86", "ARM"), "unsupported architecture"),
        (lambda t: t.replace("exists", "forall"), "unsupported condition"),
        (lambda t: t.replace("{ x=0; }", "{ 0:EAX=1; }"), "register initialisation"),
        (lambda t: t.replace("MOV EAX,[x] | MOV", "MOV EAX,[x] | MOV EAX,[x] | MOV"), "3 columns"),
        (lambda t: t.replace("x=2 /\\", "x=2 /\\ x=1 /\\"), "conflicting"),
    ],
)
def test_parse_errors(mutate, message):
    with pytest.raises(LitmusSyntaxError, match=message):
        parse_litmus(mutate(SB000A_TEXT))


def test_syntax_error_position():
    text = SB000A_TEXT.replace("MOV [x],$2 ", "MOV [x],EAX")
    with pytest.raises(LitmusSyntaxError) as err:
        parse_litmus(text)
    assert (err.value.line, err.value.column) == (4, 16)


@pytest.mark.parametrize("path", corpus_paths(), ids=lambda p: p.name)
def test_corpus_round_trip(path):
    text = path.read_text()
    test = parse_litmus(text)
    assert emit_litmus(test) == text
    assert parse_litmus(emit_litmus(test)) == test


def test_emit_is_canonicalization():
    once = emit_litmus(parse_litmus(DIY_STYLE))
    assert emit_litmus(parse_litmus(once)) == once
    assert once.startswith("X86 SB\n{ x=0; y=0; }\n")


def test_emit_initial_sentinel_and_sizes():
    config = LitmusConfig(n_cores=2, n_registers=2, n_variables=2, n_values=3, max_ops_per_core=3)
    program = Program([[Store(0, 1)], [Load(1, 0)]])
    test = LitmusTest("gen", config, program, FinalStateSpec({(0, 0): INITIAL, (1, 1): 1}), Expectation.ALLOWED)
    text = emit_litmus(test)
    assert "0:EAX=INITIAL" in text
    assert "Values=3" in text and "MaxOps=3" in text and "Registers" not in text
    assert parse_litmus(text) == test


def test_emit_four_columns():
    test = load_litmus("4.SB")
    header = emit_litmus(test).splitlines()[2]
    assert header.split("|")[-1].split() == ["P3", ";"]
    assert header.count("|") == 3


def test_too_many_registers_cannot_be_named():
    config = LitmusConfig(1, 5, 1, 1, 1)
    test = LitmusTest("t", config, Program([[Load(4, 0)]]))
    with pytest.raises(ConfigError):
        emit_litmus(test)


def test_parse_sb000a_parameter_file():
    gen = load_param("sb000a")
    assert gen.config == LitmusConfig(n_cores=2, n_registers=2, n_variables=1, n_values=3, max_ops_per_core=2)
    assert gen.mcm is MemoryModel.SC
    assert gen.final_spec == FinalStateSpec({(0, 0): 1, (1, 1): 2}, {0: 2})
    assert gen.include_programs == {Program([[Store(0, 1), Load(0, 0)], [Store(0, 2), Load(1, 0)]])}
    assert gen.exclude_programs == frozenset()
    assert parse_param(emit_param(gen)) == gen


def _param(**overrides):
    doc = json.loads((DATA / "params" / "sb000a.json").read_text())
    doc.update(overrides)
    return json.dumps(doc)


@pytest.mark.parametrize(
    "doc, message",
    [
        (_param(mcm="PSO"), "unknown memory model"),
        (json.dumps({"cores": 2}), "missing mandatory key"),
        (_param(final_registers={"2:EAX": 1}), "undeclared core"),
        (_param(final_variables={"y": 1}), "undeclared variable"),
        (_param(final_registers={"0:EAX": 7}), "outside value universe"),
        (_param(include_programs=[[["MOV [y],$1"], ["MOV EAX,[x]"]]]), "undeclared variable"),
        (_param(include_programs=[[["MOV [x],$1"]]]), "1 cores"),
        (_param(colour="blue"), "unknown key"),
        ("[1, 2]", "JSON object"),
        ("{", "not valid JSON"),
    ],
)
def test_parse_param_errors(doc, message):
    with pytest.raises(ConfigError, match=message):
        parse_param(doc)


def test_param_variable_count_and_switches():
    gen = parse_param(_param(variables=2, include_programs=[], values_exclude_initial=True, final_variables={}))
    assert gen.variable_names == ("x", "y") and gen.values_exclude_initial and not gen.distinct_ops_per_core


def test_outcome_report_rows(sb000a):
    config, program = sb000a
    test = LitmusTest("SB000a", config, program)
    outcomes = reachable_final_states(config, program, MemoryModel.SC)
    text = emit_report(OutcomeReport(test, outcomes, count_executions(config, program, MemoryModel.SC)))
    lines = text.splitlines()
    assert lines[0] == "Test SB000a: 6 valid executions, 4 distinct final states"
    assert lines[1:] == [
        "  x=1 /\\ 0:EAX=1 /\\ 1:EAX=1",
        "  x=1 /\\ 0:EAX=1 /\\ 1:EAX=2",
        "  x=2 /\\ 0:EAX=1 /\\ 1:EAX=2",
        "  x=2 /\\ 0:EAX=2 /\\ 1:EAX=2",
    ]
    doc = json.loads(emit_report(OutcomeReport(test, outcomes, 6), "structured"))
    assert len(doc["outcomes"]) == 4 and doc["executions"] == 6


def test_empty_outcome_report_marker(sb000a):
    config, program = sb000a
    text = emit_report(OutcomeReport(LitmusTest("t", config, program), OutcomeSet(), 0))
    assert "no valid execution" in text


def test_tso_only_witness_rendering(sb000a):
    config, program = sb000a
    test = LitmusTest("SB000a", config, program)
    execution = ((0, 1), (0, 2), (1, 2), (1, 1))
    lines = format_execution(test, [EventId(*e) for e in execution], replay(config, program, execution).final)
    assert lines[:4] == ["P0 | MOV [x],$1", "P0 | MOV EAX,[x]", "P1 | MOV EAX,[x]", "P1 | MOV [x],$2"]
    assert set(lines[4]) == {"-"}
    assert lines[5] == "x=2 /\\ 0:EAX=1 /\\ 1:EAX=1"


def test_check_report_structured():
    test = load_litmus("SB000b")
    report = CheckReport(test, MemoryModel.SC, None, show_witness=True)
    doc = json.loads(emit_report(report, "structured"))
    assert doc == {
        "test": "SB000b",
        "mcm": "SC",
        "expectation": "Allowed",
        "reachable": False,
        "confirmed": False,
        "witness": None,
    }


def test_unknown_format():
    with pytest.raises(ConfigError):
        emit_report(CheckReport(load_litmus("SB"), MemoryModel.SC, None), "xml")


def test_generated_test_round_trips():
    gen = load_param("scenario1")
    program = Program([[Load(0, 0)], [Store(1, 1), Load(1, 1)]])
    test = make_test(gen, program)
    assert test.name.startswith("gen-")
    assert parse_litmus(emit_litmus(test)) == test
