"""Command-line contract: schemas, determinism, exit codes, figures."""

import json

import pytest
from click.testing import CliRunner

from padicscale.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args):
    return runner.invoke(main, args, catch_exceptions=False)


def test_newton_json_report(runner):
    result = invoke(runner, [
        "newton", "--input",
        '{"p": 2, "matrix": [["1/2", "0"], ["0", "2"]]}'])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["schema"] == "1"
    assert report["scale_exponent"] == 1
    assert {e["valuation"] for e in report["valuations"]} == {"-1", "1"}


def test_newton_poly_input(runner):
    result = invoke(runner, [
        "newton", "--input", '{"p": 2, "poly": ["-2", "0", "1"]}'])
    report = json.loads(result.output)
    assert report["valuations"] == [
        {"valuation": "1/2", "multiplicity": 2}]
    assert report["scale_exponent"] == 0


def test_text_mode_is_tab_delimited(runner):
    result = invoke(runner, [
        "newton", "--text", "--input",
        '{"p": 2, "matrix": [["1/2", "0"], ["0", "2"]]}'])
    lines = result.output.strip().splitlines()
    assert lines[0] == "valuation\tmultiplicity"
    assert "-1\t1" in lines


def test_output_is_deterministic(runner):
    args = ["tidy", "--input",
            '{"p": 2, "matrix": [["1/2", "0"], ["0", "2"]]}']
    first = invoke(runner, args).output
    second = invoke(runner, args).output
    assert first == second


def test_contract_report(runner):
    result = invoke(runner, [
        "contract", "--input",
        '{"p": 2, "matrix": [["0", "-2"], ["1", "0"]]}'])
    report = json.loads(result.output)
    assert report["dims"] == {
        "expanding": 0, "bounded": 0, "contracting": 2}
    assert report["exact"] is True


def test_tidy_report(runner):
    result = invoke(runner, [
        "tidy", "--input",
        '{"p": 2, "matrix": [["1/2", "0"], ["0", "2"]],'
        ' "lattice": [["1", "1"], ["0", "8"]]}'])
    report = json.loads(result.output)
    assert report["steps"] == 1
    assert report["scale_value"] == "2"
    assert report["t1_verified"] is True


def test_scale_command(runner):
    result = invoke(runner, [
        "scale", "--input",
        '{"factors": {"2": 1, "3": 2}, "automorphism":'
        ' {"2": [["1/2"]], "3": [["0", "1"], ["1/3", "0"]]}}'])
    report = json.loads(result.output)
    assert report["value"] == "6"
    assert report["scale"] == {"2": 1, "3": 1}


def test_module_command(runner):
    result = invoke(runner, [
        "module", "--input",
        '{"factors": {"2": 1}, "automorphism": {"2": [["2"]]}}'])
    report = json.loads(result.output)
    assert report["module"] == "1/2"


def test_primes_command(runner):
    result = invoke(runner, [
        "primes", "--input",
        '{"factors": {"2": 1, "5": 1}, "automorphisms":'
        ' [{"2": [["1/2"]], "5": [["1"]]}]}'])
    report = json.loads(result.output)
    assert report["prime_spectrum"] == [2]
    assert report["local_prime_content"] == [2, 5]
    assert report["containment"] is True
    assert report["uniscalar"] is False


def test_sylow_command(runner):
    result = invoke(runner, [
        "sylow", "--input",
        '{"cyclic": [4, 9], "generators": [[1, 1]]}'])
    report = json.loads(result.output)
    assert report["subgroup_order"] == 36
    assert report["verified"] is True
    assert report["parts"] == {"2": 4, "3": 9}


def test_invariant_lattice_bounded(runner):
    result = invoke(runner, [
        "invariant-lattice", "--input",
        '{"p": 3, "n": 2, "mats": [[["0", "1"], ["1", "0"]]]}'])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert "lattice" in report


def test_invariant_lattice_unbounded_exit_code(runner):
    result = runner.invoke(main, [
        "invariant-lattice", "--input",
        '{"p": 2, "n": 1, "mats": [[["2"]]]}'])
    assert result.exit_code == 4
    report = json.loads(result.output)
    assert "unbounded" in report
    assert report["unbounded"]["witness_word"]


def test_bad_input_exit_code(runner):
    result = runner.invoke(main, ["newton", "--input", '{"p": 2}'])
    assert result.exit_code == 2


def test_non_prime_exit_code(runner):
    result = runner.invoke(main, [
        "newton", "--input", '{"p": 4, "poly": ["1", "1"]}'])
    assert result.exit_code == 2


def test_figure_file_written(runner, tmp_path):
    target = tmp_path / "newton.png"
    result = invoke(runner, [
        "newton", "--figure", str(target), "--input",
        '{"p": 2, "matrix": [["1/2", "0"], ["0", "2"]]}'])
    assert result.exit_code == 0
    assert target.exists() and target.stat().st_size > 0


def test_input_from_file(runner, tmp_path):
    src = tmp_path / "in.json"
    src.write_text('{"p": 2, "poly": ["-2", "0", "1"]}')
    result = invoke(runner, ["newton", "--input", str(src)])
    assert result.exit_code == 0
    assert json.loads(result.output)["scale_exponent"] == 0
