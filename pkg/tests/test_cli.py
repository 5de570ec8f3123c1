import io
import json
import subprocess
import sys

import pytest

from qfermat import cli
from qfermat.cli import RunConfig, main, run

FULL_TWISTS = "0:1,-1:121,-2:381,-3:121,-4:1"

# ---------------------------------------------------------
# shared artifact files
# ---------------------------------------------------------


@pytest.fixture(scope="session")
def matrix_file(tmp_path_factory, canonical_matrix):
    path = tmp_path_factory.mktemp("cli") / "matrix.json"
    path.write_text(json.dumps(canonical_matrix.to_json()))
    return str(path)


@pytest.fixture(scope="session")
def table_file(tmp_path_factory, matrix_file):
    path = tmp_path_factory.mktemp("cli") / "table.json"
    code = run(RunConfig(command="build-table", matrix_path=matrix_file,
                         out_path=str(path)),
               stdout=io.StringIO(), stderr=io.StringIO())
    assert code == 0
    return str(path)


def _json_run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    stream = captured.out if code in (0, 1) else captured.err
    return code, json.loads(stream)


# ---------------------------------------------------------
# classify
# ---------------------------------------------------------


def test_classify_payload(capsys):
    code, payload = _json_run(capsys, ["classify"])
    assert code == 0
    assert payload["admissible_count"] == 15625
    assert payload["generic_count"] == 3000
    assert payload["orbit_count_all_actions"] == 1
    assert payload["orbit_count_without_scaling"] == 1
    reps = payload["canonical_representatives"]
    assert len(reps) == 1
    assert reps[0][0] == [0, 0, 0, 0, 0]


def test_classify_deterministic_bytes(capsys):
    code1 = main(["classify"])
    out1 = capsys.readouterr().out
    code2 = main(["classify"])
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2


def test_classify_action_subset_writes_reps(capsys, tmp_path):
    # scaling orbits have size exactly 4 on the generic stratum
    reps_path = tmp_path / "reps.json"
    code, payload = _json_run(
        capsys, ["classify", "--actions", "scale", "--emit-matrices", str(reps_path)])
    assert code == 0
    assert payload["selected_actions"] == ["scale"]
    assert payload["orbit_count_selected_actions"] == 750
    reps = json.loads(reps_path.read_text())
    assert len(reps) == 750
    assert all(len(m) == 5 for m in reps)


def test_classify_rejects_unknown_action(capsys):
    code = main(["classify", "--actions", "rotate"])
    captured = capsys.readouterr()
    assert code == 2
    record = json.loads(captured.err)
    assert record["error"]["kind"] == "usage"


# ---------------------------------------------------------
# build-table / verify round trip
# ---------------------------------------------------------


def test_build_table_payload(capsys, matrix_file, tmp_path):
    out = tmp_path / "t.json"
    code, payload = _json_run(
        capsys, ["build-table", "--matrix", matrix_file, "--out", str(out)])
    assert code == 0
    assert payload["entries"] == 625 * 625
    assert payload["written"] == str(out)
    assert out.exists()


def test_verify_exact_ok(capsys, table_file):
    code, payload = _json_run(capsys, ["verify", "--table", table_file])
    assert code == 0
    assert payload["ok"] is True
    assert payload["mode"] == "exact-bilinear"
    assert payload["violations"] == []
    assert payload["checks"] >= 625 * 625


def test_verify_detects_corrupted_table(capsys, table_file, tmp_path):
    data = json.loads(open(table_file).read())
    entry = data["entries"][7]
    entry["exp"] = (entry["exp"] + 1) % 5
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(data, separators=(",", ":")))

    code, payload = _json_run(capsys, ["verify", "--table", str(bad_path)])
    assert code == 1
    assert payload["ok"] is False
    assert payload["violations"]


def test_verify_sampled_requires_seed(capsys, table_file):
    code = main(["verify", "--table", table_file, "--mode", "sampled=1000"])
    captured = capsys.readouterr()
    assert code == 3
    record = json.loads(captured.err)
    assert record["error"]["kind"] == "precondition"
    assert "seed" in record["error"]["message"]


def test_verify_sampled_deterministic(capsys, table_file):
    argv = ["verify", "--table", table_file, "--mode", "sampled=2000",
            "--seed", "11"]
    code1 = main(argv)
    out1 = capsys.readouterr().out
    code2 = main(argv)
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["seed"] == 11
    assert payload["checks"] == 2 * 2000


def test_verify_budget_exceeded(capsys, table_file):
    code = main(["verify", "--table", table_file, "--mode", "full",
                 "--budget-seconds", "0.01"])
    captured = capsys.readouterr()
    assert code == 4
    record = json.loads(captured.err)
    assert record["error"]["kind"] == "budget"


def test_malformed_json_reports_position(capsys, tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text('{"entries": [nope]}')
    code = main(["verify", "--table", str(bad)])
    captured = capsys.readouterr()
    assert code == 2
    record = json.loads(captured.err)
    assert record["error"]["kind"] == "parse"
    assert record["error"]["position"]["line"] == 1
    assert record["error"]["position"]["col"] > 1


def test_missing_file_is_parse_error(capsys, tmp_path):
    code = main(["verify", "--table", str(tmp_path / "absent.json")])
    captured = capsys.readouterr()
    assert code == 2
    assert json.loads(captured.err)["error"]["kind"] == "parse"


# ---------------------------------------------------------
# fiber
# ---------------------------------------------------------


def test_fiber_full_support_point(capsys, table_file):
    code, payload = _json_run(
        capsys, ["fiber", "--table", table_file, "--point", "1,1,1,1,-4"])
    assert code == 0
    assert payload["center_dim"] == 25
    assert payload["radical_dim"] == 0
    assert payload["semisimple"] is True
    assert payload["point"][0] == ["1", "0", "0", "0"]
    assert payload["point"][4] == ["-4", "0", "0", "0"]


def test_fiber_rejects_nonzero_sum(capsys, table_file):
    code = main(["fiber", "--table", table_file, "--point", "1,1,1,1,1"])
    captured = capsys.readouterr()
    assert code == 3
    assert json.loads(captured.err)["error"]["kind"] == "precondition"


# ---------------------------------------------------------
# hilbert
# ---------------------------------------------------------


def test_hilbert_value_and_cohomology(capsys):
    code, payload = _json_run(
        capsys, ["hilbert", "--twists", FULL_TWISTS, "--at", "1", "--cohomology"])
    assert code == 0
    assert payload["polynomial"] == ["0", "125/6", "0", "625/6"]
    assert payload["value"] == "125"
    assert payload["cohomology"] == [{"n": 1, "h": [125, 0, 0, 0], "euler": 125}]


def test_hilbert_window_without_at(capsys):
    code, payload = _json_run(
        capsys, ["hilbert", "--twists", "0:1", "--cohomology"])
    assert code == 0
    rows = payload["cohomology"]
    assert [r["n"] for r in rows] == list(range(-5, 6))
    at_zero = next(r for r in rows if r["n"] == 0)
    assert at_zero["h"] == [1, 0, 0, 0]


def test_hilbert_rejects_bad_multiset(capsys):
    code = main(["hilbert", "--twists", "0:zero"])
    captured = capsys.readouterr()
    assert code == 3
    assert json.loads(captured.err)["error"]["kind"] == "precondition"


def test_hilbert_deterministic_bytes(capsys):
    argv = ["hilbert", "--twists", FULL_TWISTS, "--at", "2"]
    main(argv)
    out1 = capsys.readouterr().out
    main(argv)
    out2 = capsys.readouterr().out
    assert out1 == out2
    assert json.loads(out1)["value"] == "875"


def test_human_emit(capsys):
    code = main(["--emit", "human", "hilbert", "--twists", "0:1", "--at", "3"])
    captured = capsys.readouterr()
    assert code == 0
    assert "value: \"20\"" in captured.out
    assert "{" not in captured.out


# ---------------------------------------------------------
# normal-form
# ---------------------------------------------------------


def test_normal_form_single_swap(capsys, matrix_file):
    # t2 t1 = zeta^{n_21} t1 t2 and n_21 = 4 for the canonical matrix
    code, payload = _json_run(
        capsys, ["normal-form", "--matrix", matrix_file, "--word", "2,1"])
    assert code == 0
    assert payload["word"] == [2, 1]
    assert payload["terms"] == [
        {"monomial": [0, 1, 1, 0, 0], "coeff": ["-1", "-1", "-1", "-1"]}]


def test_normal_form_empty_word_is_unit(capsys, matrix_file):
    code, payload = _json_run(
        capsys, ["normal-form", "--matrix", matrix_file, "--word", ""])
    assert code == 0
    assert payload["terms"] == [
        {"monomial": [0, 0, 0, 0, 0], "coeff": ["1", "0", "0", "0"]}]


def test_normal_form_rejects_bad_letters(capsys, matrix_file):
    code = main(["normal-form", "--matrix", matrix_file, "--word", "1,q"])
    captured = capsys.readouterr()
    assert code == 2
    assert json.loads(captured.err)["error"]["kind"] == "usage"


# ---------------------------------------------------------
# report and argument handling
# ---------------------------------------------------------


def test_report_smoke(capsys):
    code, payload = _json_run(capsys, ["report"])
    assert code == 0
    assert payload["classification"]["orbit_count_all_actions"] == 1
    assert payload["cy_certificate"]["passed"] is True
    assert payload["cy_certificate"]["verdict"] == "Calabi-Yau pairing criterion satisfied"
    assert payload["centrality"]["fifth_power_central"] == [True] * 5
    assert payload["centrality"]["defining_relation_vanishes"] is True
    assert payload["dimensions"]["hilbert_matches_graded"] == {
        "1": True, "2": True, "3": True}
    assert payload["dimensions"]["euler_at_zero"] == 0
    assert payload["dimensions"]["dimension_at_zero"] == 1
    assert payload["cohomology"]["h_at_zero"] == [1, 0, 0, 1]
    assert payload["cohomology"]["euler_matches_polynomial"] is True
    assert payload["cohomology"]["section_sum_matches_graded"] is True
    assert "sampled_verification" not in payload


def test_unknown_command(capsys):
    code = main(["frobnicate"])
    captured = capsys.readouterr()
    assert code == 2
    assert json.loads(captured.err)["error"]["kind"] == "usage"


def test_missing_required_argument(capsys):
    code = main(["verify"])
    captured = capsys.readouterr()
    assert code == 2
    assert json.loads(captured.err)["error"]["kind"] == "usage"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qfermat.cli", "hilbert", "--twists", "0:1",
         "--at", "2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == "10"
