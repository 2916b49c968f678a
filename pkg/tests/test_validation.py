import pytest
import numpy as np
from src.belyi.permutations import compose, genus, genus_two_triple, identity, is_transitive, trivial_triple
from src.models.reports import CheckResult, RunConfig, VerificationReport
from src.validation.suites import (
    CORPUS_MAX_GENUS,
    SUITES,
    random_map,
    run_suite,
    triple_corpus,
)


def test_report_aggregates_checks():
    """Test that a report passes only when every check passes."""
    report = VerificationReport.from_checks("demo", [
        CheckResult(name="a", passed=True),
        CheckResult(name="b", passed=False, details=["broken"]),
    ])

    assert not report.passed
    assert report.failed_checks() == ["b"]
    assert report.check("a").passed

    with pytest.raises(KeyError):
        report.check("c")


def test_run_config_bounds():
    """Test that numeric knobs are range-checked."""
    assert RunConfig().seed == 42
    assert RunConfig(grid_h="0.05").grid_h == 0.05

    with pytest.raises(ValueError):
        RunConfig(tolerance=0)
    with pytest.raises(ValueError):
        RunConfig(max_word_len=-1)


def test_random_maps_are_well_conditioned():
    """Test that sampled maps come out with unit determinant."""
    rng = np.random.default_rng(0)

    for _ in range(50):
        m = random_map(rng)
        assert abs(m.determinant - 1) < 1e-12


def test_triple_corpus():
    """Test that the corpus holds only valid triples of bounded genus."""
    corpus = triple_corpus(np.random.default_rng(42))

    assert corpus[0] == trivial_triple()
    assert corpus[1] == genus_two_triple()
    assert len(corpus) == 10
    for t in corpus:
        assert compose(*t.permutations) == identity(t.degree)
        assert is_transitive(t.degree, t.permutations)
        assert genus(t) <= CORPUS_MAX_GENUS


@pytest.mark.parametrize("suite", SUITES)
def test_suite_passes(suite):
    """Test that every property suite passes with the default seed."""
    report = run_suite(suite, RunConfig())

    assert report.suite == suite
    assert report.checks
    assert report.passed, report.failed_checks()
    assert all(c.name.startswith(f"{suite}.") for c in report.checks)


def test_schottky_suite_checks():
    """Test that the Schottky suite rejects overlaps and counts the quotient surface."""
    report = run_suite("schottky", RunConfig())

    assert report.passed, report.failed_checks()
    assert report.check("schottky.overlap_fails_disjointness_only").passed
    assert report.check("schottky.quotient_euler_characteristic").measured == {"real_axis": -2, "overlap": 2}


def test_suites_are_deterministic():
    """Test that the same seed gives an identical report."""
    first = run_suite("moebius", RunConfig(seed=7)).model_dump(mode="json")
    second = run_suite("moebius", RunConfig(seed=7)).model_dump(mode="json")

    assert first == second


def test_unknown_suite():
    """Test that an unknown suite name is an error."""
    assert "all" not in SUITES

    with pytest.raises(ValueError, match="unknown suite"):
        run_suite("everything", RunConfig())


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
