import json

import pytest

from oscomp import DirectSum, NumericalSemigroup, Status, corpus, frobenius, n_comparison
from oscomp.errors import ParseError
from oscomp.io import dumps, model_to_json


@pytest.mark.parametrize("n,gens,frob", [(1, (2, 3), 1), (2, (3, 4), 5), (5, (6, 7), 29)])
def test_family_wn(n, gens, frob):
    model = corpus.family_wn(n)
    assert isinstance(model, NumericalSemigroup) and model.generators == gens
    assert frobenius(model) == frob
    assert model.element_bound >= 4 * (n + 1) * (n + 2)
    assert model.order_mode.value == "algebraic"


def test_family_womega_two():
    model = corpus.family_womega(2)
    assert isinstance(model, DirectSum)
    assert [c.generators for c in model.components] == [(2, 3), (3, 4)]


def test_womega_one_matches_w1():
    single = corpus.family_womega(1)
    w1 = corpus.family_wn(1)
    for n in range(3):
        assert n_comparison(single, n, 24).status is n_comparison(w1, n, 24).status


def test_random_models_are_reproducible():
    a = corpus.random_model(1, corpus.RandomModelParams(kind="numerical", generators=2, max_generator=10))
    b = corpus.random_model(1, corpus.RandomModelParams(kind="numerical", generators=2, max_generator=10))
    assert a == b
    assert json.dumps(model_to_json(a), sort_keys=True) == json.dumps(model_to_json(b), sort_keys=True)
    assert all(g <= 10 for g in a.generators) and len(a.generators) <= 2


def test_random_affine_model_is_positive():
    model = corpus.random_model(2, corpus.RandomModelParams(kind="affine", dimension=2, generators=3))
    assert model.kind == "affine" and model.dimension == 2
    elems = model.with_bound(6).enumerate(6)
    for x in elems:
        for z in elems:
            assert model.leq_bool(x, model.add(x, z))


def test_staircase_report():
    models = [(f"W_{n}", corpus.family_wn(n)) for n in range(1, 6)]
    reports, status = corpus.run_report(models, ["n_comparison"], corpus.ReportBounds(n_max=5))
    assert status == 0
    for n, rep in enumerate(reports, start=1):
        assert rep["schema"] == 1 and rep["model_id"] == f"W_{n}"
        for k in range(6):
            want = Status.FAILS.value if k < n else Status.HOLDS.value
            assert rep["verdicts"][f"n_comparison[{k}]"]["status"] == want


def test_empty_report():
    assert corpus.run_report([]) == ([], 0)


def test_z_plus_completion_checks_hold():
    reports, status = corpus.run_report([("Z+", corpus.z_plus())], ["Q", "QQ", "CFP"])
    assert status == 0
    assert {v["status"] for v in reports[0]["verdicts"].values()} == {Status.HOLDS.value}


def test_bounds_are_written_into_the_report():
    rep = corpus.report_model("W_2", corpus.family_wn(2), ["almost_unperforation"])
    assert rep["bounds"]["bound"] == corpus.default_report_bound(corpus.family_wn(2))
    assert "timings" not in rep
    assert "timings" in corpus.report_model("W_2", corpus.family_wn(2), ["almost_unperforation"], timings=True)


def test_reports_are_deterministic():
    models = [("W_2", corpus.family_wn(2)), ("r", corpus.random_model(4))]
    first, _ = corpus.run_report(models, None, corpus.ReportBounds(cfp_instances=5))
    second, _ = corpus.run_report(models, None, corpus.ReportBounds(cfp_instances=5), threads=3)
    assert dumps(first) == dumps(second)


def test_hierarchy_violation_is_flagged():
    entries = {"n_comparison[0]": {"status": "Holds"}, "n_comparison[1]": {"status": "FailsWithWitness"}}
    assert corpus._hierarchy_violations(entries, "n_comparison")


def test_unknown_check_is_a_parse_error():
    with pytest.raises(ParseError):
        corpus.normalize_checks(["frobnicate"])


def test_failures_carry_replayable_witnesses():
    rep = corpus.report_model("W_3", corpus.family_wn(3), ["n_comparison"], corpus.ReportBounds(n_max=3))
    entry = rep["verdicts"]["n_comparison[2]"]
    assert entry["witness"] == {"x": 4, "ys": [5, 5, 5]}
    assert rep["violations"] == []
