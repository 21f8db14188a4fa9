import pytest

from gridhit.suites import (
    SUITES,
    SuiteParams,
    nc_bound,
    nc_bound_bruteforce,
    run_suite,
)


def test_nc_bound_values():
    assert nc_bound(1) == 5
    assert nc_bound(2) == 13
    assert nc_bound(3) == 33
    assert nc_bound(6) == 485


@pytest.mark.parametrize("d", range(1, 7))
def test_nc_bound_matches_box_scan(d):
    assert nc_bound(d) == nc_bound_bruteforce(d)


def test_nc_bound_rejects_bad_dimension():
    with pytest.raises(ValueError):
        nc_bound(0)


SMALL = {
    "lemma1": SuiteParams(trials=300),
    "lemma2": SuiteParams(clusters=8, objects=40),
    "lemma3": SuiteParams(trials=300),
    "lemma4": SuiteParams(clusters=8, objects=40),
    "lemma6": SuiteParams(trials=60),
    "lemma7": SuiteParams(),
    "hit-hyp": SuiteParams(),
    "nc-count": SuiteParams(dim=4),
    "theorem1": SuiteParams(trials=10),
    "theorem3": SuiteParams(clusters=8, objects=40),
    "theorem4": SuiteParams(clusters=6, objects=40),
    "theorem7": SuiteParams(clusters=8, objects=40),
    "theorem9": SuiteParams(dim=3),
    "remark1": SuiteParams(),
    "rir-bounds": SuiteParams(clusters=8, objects=30),
}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_registered_suite_passes(name):
    result = run_suite(name, SMALL[name])
    assert result.passed, result.summary()
    assert result.lines


def test_every_suite_has_small_params():
    assert set(SMALL) == set(SUITES)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("lemma99", SuiteParams())


def test_summary_format():
    result = run_suite("nc-count", SuiteParams(dim=2))
    assert result.summary().startswith("PASS nc-count")
