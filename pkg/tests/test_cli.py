"""Command-line front end: outputs, exit codes, schemas, reproducibility."""

import json

import jsonschema
import pytest

from densepairs import schemas
from densepairs.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_qe_command(capsys):
    code, out, _ = invoke(capsys, "qe", "--theory", "povs", "E x1. (0 < x1 & x1 < x2 & Q(x1))")
    assert code == 0
    assert out.strip() == "0 < x2"


def test_decide_command(capsys):
    code, out, _ = invoke(capsys, "decide", "--theory", "povs", "E x1. (Q(x1) & !Q(x1))")
    assert code == 0
    assert out.strip() == "false"


def test_measure_command_text_and_json(capsys):
    code, out, _ = invoke(capsys, "measure", "Q(x1)")
    assert code == 0 and out.strip() == "0"

    code, out, _ = invoke(capsys, "measure", "--format", "json", "x1 > r2 - 1 & x1 < 1")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, schemas.MEASURE_SCHEMA)
    assert data["exact"] == {"0": "2", "2": "-1"}
    assert data["decimal"].startswith("0.5857864376")

    code, out, _ = invoke(capsys, "measure", "--precision", "4", "x1 > r2 - 1 & x1 < 1")
    assert code == 0
    assert "~ 0.5858" in out


def test_decompose_command_schema(capsys):
    code, out, _ = invoke(
        capsys, "decompose", "--format", "json", "x1 = 1 | (!Q(x1) & x1 > 0)"
    )
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, schemas.DECOMPOSITION_SCHEMA)
    assert data["points"] == [{"0": "1"}]
    assert data["pieces"][0]["polarity"] == "cofinite"


def test_small_and_generic_commands(capsys):
    assert invoke(capsys, "small", "Q(x1)")[:2] == (0, "true\n")
    assert invoke(capsys, "small", "0 < x1 & x1 < 1")[:2] == (0, "false\n")
    assert invoke(capsys, "generic", "u1 != pi(r2)")[:2] == (0, "true\n")
    assert invoke(capsys, "generic", "u1 = 0")[:2] == (0, "false\n")


def test_code_commands_match_schemas(capsys):
    code, out, _ = invoke(capsys, "code-set", "--format", "json", "Q(x1) | x1 = r2")
    assert code == 0
    jsonschema.validate(json.loads(out), schemas.UNARY_SET_CODE_SCHEMA)

    code, out, _ = invoke(
        capsys, "code-fn", "--format", "json", "(Q(x1) & x2 = 2*x1) | (!Q(x1) & x2 = x1)"
    )
    assert code == 0
    jsonschema.validate(json.loads(out), schemas.FUNCTION_CODE_SCHEMA)


def test_split_command(capsys):
    code, out, _ = invoke(capsys, "split", "--format", "json", "Q(2*x1 - x2)")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, schemas.SPLIT_SCHEMA)
    assert data["home"] is None and data["quotient"] is not None

    code, out, _ = invoke(capsys, "split", "x1 < x2")
    assert code == 0
    assert out.strip() == "home: x1 < x2"


def test_exit_code_2_on_syntax_and_mode_errors(capsys):
    assert invoke(capsys, "qe", "x1 <")[0] == 2
    assert invoke(capsys, "qe", "x1 prec 0")[0] == 2  # prec outside povs-prec
    assert invoke(capsys, "qe", "--theory", "ovs", "Q(x1)")[0] == 2
    assert invoke(capsys, "qe", "x1 = u1")[0] == 2
    assert invoke(capsys, "decide", "--model-dim", "2", "Q(r3)")[0] == 2  # r3 outside M_2
    assert invoke(capsys, "qe", "--model-dim", "1", "x1 = x1")[0] == 2


def test_exit_code_3_on_precondition_violations(capsys):
    assert invoke(capsys, "decide", "x1 < 1")[0] == 3  # free variable
    assert invoke(capsys, "decompose", "x1 < x2")[0] == 3  # two free variables
    assert invoke(capsys, "measure", "true")[0] == 3  # no free variable
    assert invoke(capsys, "split", "x1 < 1 & x2 = 0")[0] == 3  # not an atom
    assert invoke(capsys, "code-fn", "x2 = x1 | x2 = x1 + 1")[0] == 3  # not functional
    assert invoke(capsys, "generic", "Q(x1)")[0] == 3  # wrong sort


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("E x1. pi(x1) = u1"))
    code, out, _ = invoke(capsys, "qe")
    assert code == 0 and out.strip() == "true"


def test_verbose_echoes_normal_form(capsys):
    code, out, err = invoke(capsys, "qe", "--verbose", "x1 + 0 < x2")
    assert code == 0
    assert "normalized:" in err


def test_oracle_check_reproducible_and_schema(capsys):
    code1, out1, _ = invoke(
        capsys, "oracle-check", "--seed", "5", "--count", "15", "--format", "json"
    )
    code2, out2, _ = invoke(
        capsys, "oracle-check", "--seed", "5", "--count", "15", "--format", "json"
    )
    assert code1 == code2 == 0
    assert out1 == out2  # bit-reproducible
    data = json.loads(out1)
    jsonschema.validate(data, schemas.ORACLE_CHECK_SCHEMA)
    assert data["disagreements"] == 0
    assert data["checks"] == 15 * 10

    code3, out3, _ = invoke(
        capsys, "oracle-check", "--seed", "6", "--count", "15", "--format", "json"
    )
    assert json.loads(out3)["checks"] == 150


def test_oracle_check_prec_mode(capsys):
    code, out, _ = invoke(
        capsys,
        "oracle-check",
        "--theory",
        "povs-prec",
        "--seed",
        "9",
        "--count",
        "12",
        "--format",
        "json",
    )
    assert code == 0
    assert json.loads(out)["disagreements"] == 0


def test_bool_and_formula_schemas(capsys):
    _, out, _ = invoke(capsys, "decide", "--format", "json", "Q(1)")
    jsonschema.validate(json.loads(out), schemas.BOOL_RESULT_SCHEMA)
    _, out, _ = invoke(capsys, "qe", "--format", "json", "E x1. x1 < x2")
    jsonschema.validate(json.loads(out), schemas.FORMULA_RESULT_SCHEMA)


def test_every_command_json_output_validates(capsys):
    cases = [
        (["qe", "E x1. x1 < x2"], schemas.FORMULA_RESULT_SCHEMA),
        (["decide", "Q(1)"], schemas.BOOL_RESULT_SCHEMA),
        (["decompose", "Q(x1)"], schemas.DECOMPOSITION_SCHEMA),
        (["measure", "Q(x1)"], schemas.MEASURE_SCHEMA),
        (["small", "Q(x1)"], schemas.BOOL_RESULT_SCHEMA),
        (["generic", "u1 = 0"], schemas.BOOL_RESULT_SCHEMA),
        (["code-set", "Q(x1)"], schemas.UNARY_SET_CODE_SCHEMA),
        (["code-fn", "x2 = x1"], schemas.FUNCTION_CODE_SCHEMA),
        (["split", "Q(x1)"], schemas.SPLIT_SCHEMA),
        (["oracle-check", "--seed", "1", "--count", "5"], schemas.ORACLE_CHECK_SCHEMA),
    ]
    for argv, schema in cases:
        code, out, _ = invoke(capsys, argv[0], "--format", "json", *argv[1:])
        assert code == 0, argv
        jsonschema.validate(json.loads(out), schema)
