import pytest
import json
from argparse import Namespace
from pathlib import Path
from src.cli.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, config_from_args, main
from validate_loops import validate_from_files

SAMPLES = Path(__file__).parent.parent / "samples"


def _run(tmp_path, *argv):
    return main([*argv, "--out", str(tmp_path)])


def _report(tmp_path, name):
    with open(tmp_path / name) as f:
        return json.load(f)


def test_schottky_sample_verifies(tmp_path):
    """Test that the genus-2 sample passes and writes words, limit points and a figure."""
    code = _run(tmp_path, "schottky", str(SAMPLES / "schottky_genus2.json"), "--svg")

    assert code == EXIT_OK
    report = _report(tmp_path, "schottky_report.json")
    assert report["verification"]["passed"]
    assert report["words"] == {"max_len": 4, "count": 161}
    assert len(report["limit_sample"]) == 108
    assert report["quotient"] == {"vertices": 2, "edges": 5, "faces": 1, "euler": -2}

    svg = (tmp_path / "schottky.svg").read_text()
    assert svg.count("<path") == 4


def test_overlapping_sample_fails(tmp_path, capsys):
    """Test that overlapping circles exit with 1 and still write a report."""
    code = _run(tmp_path, "schottky", str(SAMPLES / "schottky_overlap.json"))

    assert code == EXIT_FAILED
    report = _report(tmp_path, "schottky_report.json")
    assert not report["verification"]["passed"]
    assert report["words"] is None
    assert "✗ disjoint_circles" in capsys.readouterr().out


def test_malformed_input_is_a_usage_error(tmp_path):
    """Test that truncated JSON exits with 2."""
    broken = tmp_path / "broken.json"
    broken.write_text('{"genus": 2, "pairings": [')

    assert _run(tmp_path, "schottky", str(broken)) == EXIT_USAGE
    assert not (tmp_path / "schottky_report.json").exists()


def test_wrong_file_kind_is_a_usage_error(tmp_path):
    """Test that a monodromy file is refused by the schottky command."""
    assert _run(tmp_path, "schottky", str(SAMPLES / "monodromy_trivial.json")) == EXIT_USAGE


def test_annulus_power_map(tmp_path):
    """Test that z² from A_1.5 onto A_2.25 reports a degree-2 modulus ratio."""
    code = _run(tmp_path, "annulus", str(SAMPLES / "annulus_power_map.json"))

    assert code == EXIT_OK
    report = _report(tmp_path, "annulus_report.json")
    assert report["kind"] == "round"
    assert report["method"] == "closed_form"
    assert report["modulus_ratio"]["degree"] == 2
    assert report["modulus_ratio"]["ratio"] == pytest.approx(0.5)


def test_dessin_refinement_stages(tmp_path):
    """Test that one refinement of the trivial triple reaches degree 6 on the sphere."""
    code = _run(tmp_path, "dessin", str(SAMPLES / "monodromy_trivial.json"), "--refine", "1")

    assert code == EXIT_OK
    report = _report(tmp_path, "dessin_report.json")
    assert [s["degree"] for s in report["stages"]] == [1, 6]
    assert [s["genus"] for s in report["stages"]] == [0, 0]
    assert report["dessin"]["counts"] == {"V": 8, "E": 18, "F": 12, "euler": 2}


def test_intransitive_triple(tmp_path, capsys):
    """Test that an intransitive triple exits with 1 and lists the reason."""
    code = _run(tmp_path, "dessin", str(SAMPLES / "monodromy_intransitive.json"))

    assert code == EXIT_FAILED
    assert "not transitive" in capsys.readouterr().out
    assert not _report(tmp_path, "dessin_report.json")["valid"]


def test_genus_two_loop_search(tmp_path):
    """Test that the loop search writes a loops.json the standalone validator accepts."""
    monodromy = SAMPLES / "monodromy_genus2.json"
    code = _run(tmp_path, "dessin", str(monodromy), "--find-loops")

    assert code == EXIT_OK
    loops_file = tmp_path / "loops.json"
    assert loops_file.exists()
    assert validate_from_files(str(monodromy), str(loops_file))


def test_loop_search_needs_rank_two(tmp_path, capsys):
    """Test that a genus-0 triple is refused before any loop search."""
    code = _run(tmp_path, "dessin", str(SAMPLES / "monodromy_trivial.json"), "--find-loops")

    assert code == EXIT_USAGE
    assert "rank below 2" in capsys.readouterr().err
    assert not (tmp_path / "loops.json").exists()


def test_unknown_suite_is_a_usage_error(tmp_path):
    """Test that argparse rejections map to exit code 2."""
    assert _run(tmp_path, "verify", "--suite", "bogus") == EXIT_USAGE


def test_verify_output_is_byte_identical(tmp_path):
    """Test that two runs with one seed write the same report bytes."""
    first, second = tmp_path / "first", tmp_path / "second"

    assert main(["verify", "--suite", "moebius", "--seed", "42", "--out", str(first)]) == EXIT_OK
    assert main(["verify", "--suite", "moebius", "--seed", "42", "--out", str(second)]) == EXIT_OK

    assert (first / "verify_report.json").read_bytes() == (second / "verify_report.json").read_bytes()


def test_config_precedence():
    """Test that flags beat SCHOTTKY_* variables, which beat defaults."""
    unset = Namespace(seed=None)

    assert config_from_args(unset, environ={}).seed == 42
    assert config_from_args(unset, environ={"SCHOTTKY_SEED": "7"}).seed == 7
    assert config_from_args(Namespace(seed=3), environ={"SCHOTTKY_SEED": "7"}).seed == 3


def test_bad_environment_value_is_rejected():
    """Test that an out-of-range environment value fails config validation."""
    with pytest.raises(ValueError):
        config_from_args(Namespace(seed=None), environ={"SCHOTTKY_TOLERANCE": "-1"})


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
