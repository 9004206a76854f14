import json

import pytest

from shoda.cli import CliConfig, main, run
from shoda.serialize import dumps


@pytest.fixture
def spec23_file(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"blocks": [2, 3]}))
    return str(path)


@pytest.fixture
def spec4_file(tmp_path):
    path = tmp_path / "spec4.json"
    path.write_text(json.dumps({"blocks": [4]}))
    return str(path)


@pytest.fixture
def witness_file(tmp_path):
    blocks = [
        [[3, 0], [0, 0], [0, 0], [3, 0]],
        [[-2, 0], [0, 0], [0, 0], [0, 0], [-2, 0], [0, 0], [0, 0], [0, 0], [-2, 0]],
    ]
    path = tmp_path / "witness.json"
    path.write_text(json.dumps({"blocks": blocks}))
    return str(path)


def test_complete_command(spec23_file):
    code, report = run(CliConfig(command="complete", spec_path=spec23_file))
    assert code == 0
    assert report["N"] == 5
    assert report["radical_dim"] == 0
    assert report["components"] == [25]
    assert report["iso_residual"] < 1e-10


def test_check_commands(spec23_file, spec4_file):
    code, report = run(CliConfig(command="check", spec_path=spec4_file))
    assert code == 0 and report["verdict"] is True
    code, report = run(CliConfig(command="check", spec_path=spec23_file))
    assert code == 0 and report["verdict"] is False
    assert report["witness"] is not None


def test_decompose_in_completion(spec23_file, witness_file):
    config = CliConfig(
        command="decompose",
        spec_path=spec23_file,
        element_path=witness_file,
        in_completion=True,
    )
    code, report = run(config)
    assert code == 0
    assert report["residual"] < 1e-9
    assert "a" in report and "u" in report["a"]


def test_decompose_reports_certificate_for_multi_block(spec23_file, witness_file):
    config = CliConfig(command="decompose", spec_path=spec23_file, element_path=witness_file)
    code, report = run(config)
    assert code == 0
    assert report["certified_non_commutator"] is True
    assert report["block_traces"] == [[6.0, 0.0], [-6.0, 0.0]]


def test_decompose_single_block(tmp_path, spec4_file):
    element = tmp_path / "traceless.json"
    flat = [[0.0, 0.0]] * 16
    flat[0] = [1.0, 0.0]
    flat[5] = [-1.0, 0.0]
    element.write_text(json.dumps({"blocks": [flat]}))
    config = CliConfig(command="decompose", spec_path=spec4_file, element_path=str(element))
    code, report = run(config)
    assert code == 0
    assert report["residual"] < 1e-12
    assert report["in_completion"] is False
    assert "blocks" in report["a"]


def test_path_with_explicit_endpoints(tmp_path, spec23_file):
    p_flat = [[0.0, 0.0]] * 9
    p_flat[0] = [1.0, 0.0]
    q_flat = [[0.0, 0.0]] * 9
    q_flat[4] = [1.0, 0.0]
    zero2 = [[0.0, 0.0]] * 4
    endpoints = {
        "p": {"blocks": [zero2, p_flat]},
        "q": {"blocks": [zero2, q_flat]},
    }
    path_file = tmp_path / "endpoints.json"
    path_file.write_text(json.dumps(endpoints))
    config = CliConfig(
        command="path", spec_path=spec23_file, element_path=str(path_file), samples=33
    )
    code, report = run(config)
    assert code == 0
    assert report["samples"] == 33
    assert report["max_idempotency_residual"] < 1e-9


def test_decompose_rejects_nonzero_trace(tmp_path, spec4_file):
    element = tmp_path / "one.json"
    flat = [[1.0 if r == c else 0.0, 0.0] for r in range(4) for c in range(4)]
    element.write_text(json.dumps({"blocks": [flat]}))
    config = CliConfig(command="decompose", spec_path=spec4_file, element_path=str(element))
    code, report = run(config)
    assert code == 1
    assert report["error"] == "NotTraceless"


def test_rank_trace_spectrum(spec23_file, tmp_path):
    element = tmp_path / "elt.json"
    blocks = [
        [[2, 0], [0, 0], [0, 0], [0, 0]],
        [[0, 0]] * 9,
    ]
    element.write_text(json.dumps({"blocks": blocks}))
    code, report = run(CliConfig(command="rank", spec_path=spec23_file, element_path=str(element)))
    assert code == 0 and report["rank"] == 1
    code, report = run(CliConfig(command="trace", spec_path=spec23_file, element_path=str(element)))
    assert code == 0 and report["trace"] == [2.0, 0.0]
    code, report = run(
        CliConfig(command="spectrum", spec_path=spec23_file, element_path=str(element))
    )
    assert code == 0
    assert [[2.0, 0.0], 1] in report["eigenvalues"]
    assert report["nonzero"] == [[[2.0, 0.0], 1]]


def test_riesz_command(spec23_file, tmp_path):
    element = tmp_path / "elt.json"
    blocks = [
        [[2, 0], [0, 0], [0, 0], [0, 0]],
        [[0, 0]] * 9,
    ]
    element.write_text(json.dumps({"blocks": blocks}))
    code, report = run(CliConfig(command="riesz", spec_path=spec23_file, element_path=str(element)))
    assert code == 0
    assert len(report["projections"]) == 1
    entry = report["projections"][0]
    assert entry["rank"] == 1
    assert entry["idempotency_residual"] < 1e-10


def test_norm_audit_command(spec23_file):
    code, report = run(
        CliConfig(command="norm-audit", spec_path=spec23_file, samples=200, seed=9)
    )
    assert code == 0
    assert report["worst_ratio"] <= 1 + 1e-9
    assert report["isometry_dev"] < 1e-12
    assert report["a_norm_model"] == "max-block-operator-norm"


def test_path_command(spec23_file):
    code, report = run(CliConfig(command="path", spec_path=spec23_file, samples=64))
    assert code == 0
    assert report["samples"] == 64
    assert report["max_idempotency_residual"] < 1e-9
    assert report["max_rank_defect"] == 0
    assert report["endpoints_exact"] is True


def test_info_command(spec23_file):
    code, report = run(CliConfig(command="info", spec_path=spec23_file))
    assert code == 0
    assert report == {
        "blocks": [2, 3],
        "dim": 13,
        "matrix_size": 5,
        "extension_dim": 25,
        "shoda_complete": False,
    }


def test_missing_file_is_exit_two(tmp_path):
    code, report = run(CliConfig(command="info", spec_path=str(tmp_path / "nope.json")))
    assert code == 2
    assert "error" in report


def test_bad_json_is_exit_two(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, report = run(CliConfig(command="info", spec_path=str(path)))
    assert code == 2


def test_reports_are_deterministic(spec23_file):
    first = run(CliConfig(command="norm-audit", spec_path=spec23_file, samples=100, seed=3))
    second = run(CliConfig(command="norm-audit", spec_path=spec23_file, samples=100, seed=3))
    assert dumps(first[1]) == dumps(second[1])


def test_main_writes_output_file(spec23_file, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["check", spec23_file, "-o", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["verdict"] is False
    assert capsys.readouterr().out == ""


def test_main_prints_to_stdout(spec23_file, capsys):
    code = main(["info", spec23_file])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["blocks"] == [2, 3]


def test_dump_table_flag(tmp_path, capsys):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"blocks": [1, 1]}))
    code, report = run(CliConfig(command="complete", spec_path=str(spec), dump_table=True))
    assert code == 0
    table = report["table"]
    assert len(table) == 4 and len(table[0]) == 4 and len(table[0][0]) == 4
