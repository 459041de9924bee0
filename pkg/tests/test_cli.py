"""End-to-end tests of the command line through typer's runner."""
import json

import pytest
from typer.testing import CliRunner

from supertropical.cli import app

runner = CliRunner()


def invoke(*args):
    return runner.invoke(app, [str(a) for a in args])


def test_check_not_nilpotent(fixtures_dir):
    result = invoke("check", fixtures_dir / "two_way_pair.json")
    assert result.exit_code == 1
    assert result.output == "NOT_NILPOTENT\ncycle: 1 2\n"


def test_check_nilpotent(fixtures_dir):
    result = invoke("check", fixtures_dir / "triangularizable.json")
    assert result.exit_code == 0
    assert result.output == "NILPOTENT\n"


def test_triangularize(fixtures_dir):
    result = invoke("triangularize", fixtures_dir / "triangularizable.json")
    assert result.exit_code == 0
    assert result.output == (
        "NILPOTENT\n"
        "permutation: 3 1 2\n"
        "order: 2 3 1\n"
        "g1:\n"
        "  eps eps 4\n"
        "  eps eps eps\n"
        "  eps eps eps\n"
        "g2:\n"
        "  eps 0 eps\n"
        "  eps eps 1\n"
        "  eps eps eps\n"
    )


def test_triangularize_json(fixtures_dir):
    result = invoke("triangularize", fixtures_dir / "triangularizable.json", "--format", "json")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["result"] == "NILPOTENT"
    assert payload["permutation"] == [3, 1, 2]
    assert payload["order"] == [2, 3, 1]
    assert payload["matrices"][0]["entries"][0] == ["eps", "eps", 4]


def test_triangularize_fails_on_cycle(fixtures_dir):
    result = invoke("triangularize", fixtures_dir / "two_way_pair.json")
    assert result.exit_code == 1
    assert result.output.startswith("NOT_NILPOTENT\ncycle: 1 2\n")


def test_certificate(fixtures_dir):
    result = invoke("certificate", fixtures_dir / "two_way_pair.json")
    assert result.exit_code == 0
    assert result.output == (
        "NOT_NILPOTENT\n"
        "cycle: 1 2\n"
        "certificate: (bracket g1 g2)\n"
        "value:\n"
        "  0 eps\n"
        "  eps 0\n"
        "two-way: g1 g2 v=1 w=2\n"
        "two-way certificate: (bracket g1 g2)\n"
        "two-way value:\n"
        "  0 eps\n"
        "  eps 0\n"
    )


def test_certificate_for_nilpotent_system(fixtures_dir):
    result = invoke("certificate", fixtures_dir / "triangularizable.json")
    assert result.exit_code == 0
    assert result.output == "NILPOTENT\ncertificate: none\n"


def test_power(fixtures_dir):
    result = invoke("power", fixtures_dir / "single_edge.json", "--k", 2)
    assert result.exit_code == 0
    assert result.output == "eps eps 1\neps eps eps\neps eps eps\n"


def test_power_rejects_zero_exponent(fixtures_dir):
    result = invoke("power", fixtures_dir / "single_edge.json", "--k", 0)
    assert result.exit_code == 2


def test_bracket_of_two_files(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(json.dumps({"n": 2, "entries": [["eps", 0], ["eps", "eps"]]}), encoding="utf-8")
    b.write_text(json.dumps({"n": 2, "entries": [["eps", "eps"], [0, "eps"]]}), encoding="utf-8")
    result = invoke("bracket", a, b)
    assert result.exit_code == 0
    assert result.output == "0 eps\neps 0\n"


def test_bracket_of_system(fixtures_dir):
    result = invoke("bracket", fixtures_dir / "two_way_pair.json")
    assert result.exit_code == 0
    assert result.output == "0 eps\neps 0\n"


def test_bracket_needs_two_matrices(fixtures_dir):
    result = invoke("bracket", fixtures_dir / "single_edge.json")
    assert result.exit_code == 2


def test_spectrum(fixtures_dir):
    assert invoke("spectrum", fixtures_dir / "single_edge.json").output == "eps\n"
    result = invoke("spectrum", fixtures_dir / "two_way_pair.json")
    assert result.exit_code == 0
    assert result.output == "g1: eps\ng2: eps\ndominant: 0\n"


def test_lcs(fixtures_dir):
    result = invoke("lcs", fixtures_dir / "two_way_pair.json", "--max-depth", 3)
    assert result.exit_code == 0
    assert result.output == (
        "level 0: 2 generators\n"
        "level 1: 2 generators\n"
        "level 2: 3 generators\n"
        "level 3: 2 generators\n"
        "index: none within depth 3\n"
    )


def test_lcs_index(fixtures_dir):
    result = invoke("lcs", fixtures_dir / "single_edge.json")
    assert result.output.splitlines()[-1] == "index: 2"


def test_max_plus_flag_rejects_ghosts(fixtures_dir):
    assert invoke("check", fixtures_dir / "ghost_upper.json").exit_code == 0
    result = invoke("check", fixtures_dir / "ghost_upper.json", "--max-plus")
    assert result.exit_code == 2
    assert "max-plus" in result.output


def test_output_file(fixtures_dir, tmp_path):
    target = tmp_path / "report.txt"
    result = invoke("check", fixtures_dir / "two_way_pair.json", "--output", target)
    assert result.exit_code == 1
    assert target.read_text(encoding="utf-8") == "NOT_NILPOTENT\ncycle: 1 2\n"


def test_output_to_a_directory_is_a_usage_error(fixtures_dir, tmp_path):
    result = invoke("check", fixtures_dir / "two_way_pair.json", "--output", tmp_path)
    assert result.exit_code == 2
    assert "cannot write report" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ("check", "missing.json"),
        ("check", "FIXTURE", "--format", "xml"),
        ("lcs", "FIXTURE", "--max-depth", 0),
    ],
)
def test_usage_errors(args, fixtures_dir):
    args = [fixtures_dir / "two_way_pair.json" if a == "FIXTURE" else a for a in args]
    result = invoke(*args)
    assert result.exit_code == 2
    assert "error" in result.output


def test_parse_error_exits_two(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"n": 2, "entries": [["eps", 0], ["eps"]]}', encoding="utf-8")
    result = invoke("check", broken)
    assert result.exit_code == 2
    assert "ragged row" in result.output


def test_selftest_small(tmp_path):
    config = tmp_path / "engine.json"
    sizes = {
        "scalars": 200,
        "matrices_per_n": 10,
        "bracket_identity": 20,
        "systems": 20,
        "oracle_systems": 20,
        "lcs_systems": 10,
        "sampled_words": 20,
    }
    config.write_text(json.dumps({"selftest": sizes}), encoding="utf-8")
    first = invoke("selftest", "--config", config, "--seed", 3)
    assert first.exit_code == 0
    assert first.output.endswith("PASS\n")
    assert "lcs_termination:" in first.output
    assert "derived_containment:" in first.output
    assert invoke("selftest", "--config", config, "--seed", 3).output == first.output


@pytest.mark.parametrize(
    "name",
    ["two_way_pair.json", "triangularizable.json", "single_edge.json", "ghost_upper.json"],
)
@pytest.mark.parametrize("command", ["check", "triangularize", "certificate", "lcs", "spectrum"])
def test_reports_are_deterministic(fixtures_dir, command, name):
    first = invoke(command, fixtures_dir / name, "--format", "json")
    second = invoke(command, fixtures_dir / name, "--format", "json")
    assert first.exit_code in (0, 1)
    assert first.output == second.output
