import pytest
from click.testing import CliRunner
from pathlib import Path
import json
from unittest.mock import patch
from src.acceptance import CriterionResult
from src.bridging import BridgeStep, ac_script, as_script, bridge
from src.cli import main, generate_output_path, save_json_output, save_csv_output, save_report_output
from src.grid import COLUMN, ROW, GridSubgraph, to_dict
from src.patterns import alternating_cycle, horizontal_edge


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture
def results():
    return [
        CriterionResult(0, "pattern validation", True, "8 built-in patterns checked", 0.5),
        CriterionResult(1, "exact grid Ramsey values", False, "gr(edge, K_2) = 3", 1.25),
    ]


@pytest.fixture
def complete_grid_file(tmp_path):
    path = tmp_path / "k3.json"
    path.write_text(json.dumps(to_dict(GridSubgraph.complete(3))))
    return path


def test_save_json_output(tmp_path):
    """Test JSON output saving."""
    data = {"value": 2}
    output_path = tmp_path / "nested" / "test.json"
    save_json_output(data, output_path)

    with open(output_path) as f:
        saved_data = json.load(f)
    assert saved_data == data


def test_save_csv_output(tmp_path, results):
    """Test CSV output saving."""
    output_path = tmp_path / "test.csv"
    save_csv_output(results, output_path)

    assert output_path.exists()
    with open(output_path) as f:
        header = f.readline().strip()
        assert header == "number,name,passed,detail,seconds"
        assert "exact grid Ramsey values" in f.read()


def test_save_csv_output_empty(tmp_path):
    """Test no file is written without results."""
    output_path = tmp_path / "test.csv"
    save_csv_output([], output_path)
    assert not output_path.exists()


def test_save_report_output(tmp_path, results):
    """Test report output saving."""
    output_path = tmp_path / "test.txt"
    save_report_output(results, output_path, seed=7)

    with open(output_path) as f:
        content = f.read()
        assert "Grid Ramsey Acceptance Report" in content
        assert "Seed: 7" in content
        assert "Criteria passed: 1/2" in content
        assert " 1 FAIL" in content


def test_generate_output_path(tmp_path):
    """Test timestamped artifact names."""
    path = generate_output_path(tmp_path, "acceptance", "csv")
    assert path.parent == tmp_path
    assert path.name.startswith("acceptance_")
    assert path.suffix == ".csv"


def test_generate_output_path_deterministic(tmp_path):
    """Test deterministic runs use fixed artifact names."""
    assert generate_output_path(tmp_path, "acceptance", "csv", timestamped=False) == tmp_path / "acceptance.csv"


def test_save_report_output_without_timing(tmp_path, results):
    """Test the report leaves out the clock when timing is off."""
    output_path = tmp_path / "test.txt"
    save_report_output(results, output_path, seed=7, include_timing=False)

    content = output_path.read_text()
    assert "Generated" not in content
    assert "Total time" not in content
    assert " 1 FAIL  exact grid Ramsey values: gr(edge, K_2) = 3" in content


def test_pattern_command(runner):
    """Test a pattern spec is printed as JSON."""
    result = runner.invoke(main, ['pattern', 'ac:6'])
    assert result.exit_code == 0
    assert json.loads(result.output) == to_dict(alternating_cycle(6))


def test_pattern_command_bad_spec(runner):
    """Test an unknown spec is a usage error."""
    result = runner.invoke(main, ['pattern', 'blob'])
    assert result.exit_code == 2


def test_validate_command(runner, tmp_path, complete_grid_file):
    """Test valid files pass and invalid files exit 1."""
    result = runner.invoke(main, ['validate', str(complete_grid_file)])
    assert result.exit_code == 0

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"columns": 2, "rows": 2, "edges": [[[1, 1], [2, 2]]]}))
    result = runner.invoke(main, ['validate', str(bad)])
    assert result.exit_code == 1
    assert "edge not within a row or column" in result.output


def test_embed_count_command(runner, complete_grid_file):
    """Test counting embeddings of an edge into K_3 x K_3."""
    result = runner.invoke(main, ['embed', 'count', 'edge', str(complete_grid_file)])
    assert result.exit_code == 0
    assert result.output.strip() == "18"


@pytest.mark.parametrize("axis,kind", [("col", COLUMN), ("row", ROW)])
def test_bridge_apply_command(runner, axis, kind):
    """Test one bridging step on an edge with --axis and --src."""
    result = runner.invoke(main, ['bridge', 'apply', 'edge', '--axis', axis, '--src', '1', '--anchor', '1'])
    assert result.exit_code == 0
    assert json.loads(result.output) == to_dict(bridge(horizontal_edge(), BridgeStep(kind, 1, 1)))


def test_bridge_apply_bad_axis(runner):
    """Test an unknown axis is a usage error."""
    result = runner.invoke(main, ['bridge', 'apply', 'edge', '--axis', 'diagonal', '--src', '1', '--anchor', '1'])
    assert result.exit_code == 2


def test_bridge_script_command(runner):
    """Test the AC_6 script is printed."""
    result = runner.invoke(main, ['bridge', 'script', 'ac:6'])
    assert result.exit_code == 0
    assert json.loads(result.output) == ac_script(6).to_dict()


@pytest.mark.parametrize("spec,script", [("ac:8", lambda: ac_script(8)), ("as:3", lambda: as_script(3))])
def test_bridge_script_replay(runner, spec, script):
    """Test --replay prints the replayed grid and that it contains the pattern."""
    result = runner.invoke(main, ['bridge', 'script', spec, '--replay'])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["script"] == script().to_dict()
    assert data["replay"] == to_dict(script().replay())
    assert data["contains_pattern"] is True


@pytest.mark.parametrize("spec", ["ac", "ac:x", "hpath:3"])
def test_bridge_script_bad_spec(runner, spec):
    """Test unknown families and missing sizes are usage errors."""
    result = runner.invoke(main, ['bridge', 'script', spec])
    assert result.exit_code == 2


def test_ramsey_exact_command(runner, tmp_path):
    """Test the exact search result and its checkpoints."""
    checkpoints = tmp_path / "checkpoints"
    result = runner.invoke(main, ['ramsey', 'exact', 'edge', '--k', '2', '--nmax', '3',
                                  '--checkpoint-dir', str(checkpoints)])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["value"] == 2
    assert "gr = 2" in result.stderr
    assert list(checkpoints.glob("checkpoint_*.json"))


def test_ramsey_exact_rejects_foreign_checkpoint(runner, tmp_path):
    """Test resuming with a checkpoint of another pattern."""
    checkpoints = tmp_path / "checkpoints"
    runner.invoke(main, ['ramsey', 'exact', 'edge', '--k', '2', '--nmax', '3', '--checkpoint-dir', str(checkpoints)])
    saved = next(checkpoints.glob("checkpoint_*.json"))
    result = runner.invoke(main, ['ramsey', 'exact', 'hpath:3', '--k', '2', '--nmax', '3',
                                  '--checkpoint-dir', str(checkpoints), '--resume', str(saved)])
    assert result.exit_code == 2


def test_ramsey_cnf_and_decode(runner, tmp_path):
    """Test exporting a formula and decoding solver output."""
    cnf = tmp_path / "path.cnf"
    result = runner.invoke(main, ['ramsey', 'cnf', 'hpath:3', '--k', '2', '--n', '2', '--out', str(cnf)])
    assert result.exit_code == 0
    assert "p cnf 4 4" in cnf.read_text()

    model = tmp_path / "model.txt"
    model.write_text("s SATISFIABLE\nv 1 2 3 4 0\n")
    result = runner.invoke(main, ['ramsey', 'decode', str(cnf), str(model)])
    assert result.exit_code == 0
    assert json.loads(result.output)["witness"] == to_dict(GridSubgraph.complete(2))

    model.write_text("v -1 -2 -3 -4 0\n")
    result = runner.invoke(main, ['ramsey', 'decode', str(cnf), str(model)])
    assert result.exit_code == 1


def test_ramsey_threshold_missing_value(runner):
    """Test library errors become a clean exit with the message."""
    result = runner.invoke(main, ['ramsey', 'threshold', '--m', '3'])
    assert result.exit_code == 1
    assert "R(121,121)" in result.stderr


def test_bad_caps_override(runner):
    """Test lowering a cap is a usage error."""
    result = runner.invoke(main, ['--caps', 'backtrack_n=2', 'pattern', 'edge'])
    assert result.exit_code == 2


def test_hyper_tight_command(runner):
    """Test the tight cycle JSON."""
    result = runner.invoke(main, ['hyper', 'tight', '6'])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["vertices"] == [1, 2, 3, 4, 5, 6]
    assert data["bipartition"] == {"X": [1, 3, 5], "Y": [2, 4, 6]}


@patch('src.cli.reproduce_all')
def test_reproduce_command(mock_reproduce, runner, tmp_path, results):
    """Test artifacts are written and a failing criterion exits 1."""
    mock_reproduce.return_value = results
    out = tmp_path / "acceptance.json"
    result = runner.invoke(main, ['--out-dir', str(tmp_path), 'reproduce',
                                  '--output-format', 'json', '--output-format', 'csv', '--out', str(out)])
    assert result.exit_code == 1
    data = json.loads(out.read_text())
    assert data["passed"] is False
    assert "seconds" not in data["criteria"][0]
    assert (tmp_path / "acceptance.csv").exists()
    assert " 0 PASS  pattern validation" in result.output


@patch('src.cli.reproduce_all')
def test_reproduce_command_success(mock_reproduce, runner, tmp_path, results):
    """Test a passing suite exits 0 and writes the report."""
    mock_reproduce.return_value = results[:1]
    result = runner.invoke(main, ['--out-dir', str(tmp_path), '--seed', '3', 'reproduce'])
    assert result.exit_code == 0
    assert mock_reproduce.call_args.args[0].seed == 3
    assert (tmp_path / "acceptance.txt").exists()
    assert (tmp_path / "acceptance.json").exists()


def test_cap_error_exits_cleanly(runner, tmp_path):
    """Test a cap overrun is reported like any other library error."""
    tall = tmp_path / "tall.json"
    tall.write_text(json.dumps(to_dict(GridSubgraph.empty(2, 7))))
    result = runner.invoke(main, ['meh', 'color', str(tall)])
    assert result.exit_code == 1
    assert "color_rows cap exceeded: 7 > 6" in result.stderr


@patch('src.cli.reproduce_all')
def test_reproduce_artifacts_are_byte_identical(mock_reproduce, runner, tmp_path, results):
    """Test two deterministic runs that differ only in timings write the same bytes."""
    slower = [CriterionResult(r.number, r.name, r.passed, r.detail, r.seconds + 9.5) for r in results]
    mock_reproduce.side_effect = [results, slower]
    formats = ['--output-format', 'json', '--output-format', 'csv', '--output-format', 'report']
    for name in ("first", "second"):
        runner.invoke(main, ['--out-dir', str(tmp_path / name), 'reproduce'] + formats)

    for artifact in ("acceptance.json", "acceptance.csv", "acceptance.txt"):
        first = (tmp_path / "first" / artifact).read_bytes()
        assert first == (tmp_path / "second" / artifact).read_bytes()


@patch('src.cli.reproduce_all')
def test_reproduce_non_deterministic_keeps_timings(mock_reproduce, runner, tmp_path, results):
    """Test --no-deterministic writes timestamped artifacts with timings."""
    mock_reproduce.return_value = results[:1]
    result = runner.invoke(main, ['--out-dir', str(tmp_path), '--no-deterministic', 'reproduce'])
    assert result.exit_code == 0
    saved = list(Path(tmp_path).glob("acceptance_*.json"))
    assert saved
    assert json.loads(saved[0].read_text())["criteria"][0]["seconds"] == 0.5
    assert "Generated:" in next(Path(tmp_path).glob("acceptance_*.txt")).read_text()


def test_ramsey_exact_output_is_byte_identical(runner, tmp_path):
    """Test the same exact run writes the same bytes twice."""
    for name in ("a.json", "b.json"):
        result = runner.invoke(main, ['ramsey', 'exact', 'hpath:3', '--k', '2', '--nmax', '3',
                                      '--checkpoint-dir', str(tmp_path / "checkpoints"),
                                      '--out', str(tmp_path / name)])
        assert result.exit_code == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
