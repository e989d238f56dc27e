import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from hlnorm.exponents import make_pair
from hlnorm.opnorm import NormEstimate, operator_norm
from hlnorm.verify import (CSV_COLUMNS, SuiteConfig, check_duality_identity, check_improvement_dominance,
                           check_instance, check_theorem1, check_theorem2, random_positive_matrix,
                           run_suite)

from conftest import GRID_PAIRS


def est(value):
    return NormEstimate(value, np.zeros(1), "exact-diagonal", lower=value, upper=value)


def test_theorem1_all_ones():
    A = [[1, 1], [1, 1]]
    pair = make_pair(2, 1)
    rows, cols = check_theorem1(A, pair, operator_norm(A, pair))
    assert rows.lhs == pytest.approx(2.0)
    assert rows.rhs == pytest.approx(2 * math.sqrt(2))
    assert rows.passed and rows.ratio == pytest.approx(1 / math.sqrt(2))
    assert cols.passed


@pytest.mark.parametrize("n", [1, 3, 7])
@pytest.mark.parametrize("p, q", GRID_PAIRS)
def test_theorem1_identity_tight(n, p, q):
    pair = make_pair(p, q)
    A = np.eye(n)
    rows, cols = check_theorem1(A, pair, operator_norm(A, pair))
    assert rows.ratio == 1.0 and cols.ratio == 1.0


def test_theorem1_rejects_outside_window():
    with pytest.raises(ValueError):
        check_theorem1(np.eye(2), make_pair("3/2", 1), est(1.0))
    with pytest.raises(ValueError):
        check_theorem1(np.eye(2), make_pair(4, 3), est(1.0))


def test_theorem2_identity_pq_equal():
    pair = make_pair(3, 3)
    recs = check_theorem2(np.eye(3), pair, operator_norm(np.eye(3), pair))
    assert [r.theorem for r in recs] == ["T2-i", "T2-improved"]
    assert all(r.lhs == 1.0 and r.ratio == 1.0 for r in recs)


def test_theorem2_all_ones_pinf_q1():
    A = [[1, 1], [1, 1]]
    pair = make_pair("inf", 1)
    recs = {r.theorem: r for r in check_theorem2(A, pair, operator_norm(A, pair))}
    assert set(recs) == {"T2-ii", "T2-improved"}
    assert recs["T2-improved"].lhs == 4.0 and recs["T2-improved"].rhs == 4.0
    assert recs["T2-improved"].ratio == 1.0
    assert recs["T2-ii"].lhs == pytest.approx(4 ** 0.75)
    assert recs["T2-ii"].passed


def test_theorem2_r_equal_two_emits_both():
    pair = make_pair(2, 1)
    tags = [r.theorem for r in check_theorem2(np.eye(2), pair, est(math.sqrt(2)))]
    assert tags == ["T2-i", "T2-ii", "T2-improved"]


def test_theorem2_rejects_q_below_one():
    with pytest.raises(ValueError):
        check_theorem2(np.eye(2), make_pair(2, "1/2"), est(1.0))


def test_failed_record_when_rhs_too_small():
    rows, _ = check_theorem1(np.eye(2), make_pair(2, 1), est(1.0))
    assert not rows.passed and rows.ratio == pytest.approx(math.sqrt(2))


def test_dominance_examples():
    rec = check_improvement_dominance([[1, 1], [1, 1]], make_pair("inf", 1))
    assert rec.lhs == pytest.approx(4 ** 0.75) and rec.rhs == 4.0 and rec.passed
    rec = check_improvement_dominance([[0, 0], [0, 2.5]], make_pair(2, 1))
    assert rec.lhs == rec.rhs == 2.5 and rec.ratio == 1.0
    with pytest.raises(ValueError):
        check_improvement_dominance(np.eye(2), make_pair(4, 2))


@given(arrays(float, (3, 4), elements=st.floats(0, 100)), st.sampled_from(GRID_PAIRS))
def test_dominance_never_fails(a, pq):
    pair = make_pair(*pq)
    if pair.r.inv >= 0.5:
        assert check_improvement_dominance(a, pair).passed


def test_duality_identity_record():
    A = [[1, 1], [1, 1]]
    rec = check_duality_identity(A, make_pair(2, 1))
    assert rec.passed and rec.lhs == pytest.approx(2 * math.sqrt(2)) and rec.rhs == pytest.approx(rec.lhs)
    rec = check_duality_identity(np.eye(3), make_pair(4, "4/3"))
    assert rec.passed and rec.lhs == pytest.approx(3 ** float(make_pair(4, "4/3").r.inv))


def test_random_matrix_determinism_and_dists():
    a = random_positive_matrix(2, 2, "uniform", seed=1)
    assert a == random_positive_matrix(2, 2, "uniform", seed=1)
    s = random_positive_matrix(10, 10, "sparse(0.5)", seed=3)
    zeros = np.mean(s.a == 0)
    assert 0.3 < zeros < 0.7 and np.all(s.a >= 0)
    e = random_positive_matrix(5, 5, "exponential", seed=2)
    assert np.all(np.isfinite(e.a)) and np.all(e.a >= 0)
    assert np.all(random_positive_matrix(4, 4, "sparse", seed=0, density=1.0).a > 0)
    with pytest.raises(ValueError):
        random_positive_matrix(2, 2, "cauchy")
    with pytest.raises(ValueError):
        random_positive_matrix(2, 2, "sparse", density=0.0)


def small_config(**kw):
    base = dict(sizes=[[2, 3], [4, 4]], instances_per_size=2, identity_sizes=[1, 3],
                pairs=[["3", "3/2"], ["inf", "1"], ["2", "2"]], seed=5)
    base.update(kw)
    return SuiteConfig(**base)


def test_run_suite_empty_grid():
    rep = run_suite(small_config(pairs=[]))
    assert rep.records == [] and rep.counts == {} and rep.config["seed"] == 5


def test_run_suite_small():
    rep = run_suite(small_config())
    assert not rep.violations
    ids = {r.matrix_id for r in rep.records}
    assert "identity-3" in ids and len(ids) == 2 + 4
    for tag in ("T1-rows", "T1-cols", "T2-improved"):
        ident = [r.ratio for r in rep.records if r.theorem == tag and r.matrix_id.startswith("identity")]
        assert max(ident) == 1.0
    assert rep.worst_ratio["T1-rows"] == 1.0
    total = sum(c["pass"] + c["fail"] for c in rep.counts.values())
    assert total == len(rep.records)


def test_run_suite_deterministic_and_formats_agree():
    a = run_suite(small_config()).to_json()
    b = run_suite(small_config()).to_json()
    assert a == b
    rep = json.loads(a)
    csv_text = run_suite(small_config()).to_csv().splitlines()
    assert tuple(csv_text[0].split(",")) == CSV_COLUMNS
    assert len(csv_text) - 1 == len(rep["records"])
    for line, rec in zip(csv_text[1:], rep["records"]):
        fields = dict(zip(CSV_COLUMNS, line.split(",")))
        assert fields["theorem"] == rec["theorem"] and float(fields["lhs"]) == rec["lhs"]
        assert fields["pass"] == str(rec["pass"]).lower()


def test_run_suite_accepts_dict_config():
    rep = run_suite(small_config().to_dict())
    assert rep.config == small_config().to_dict()


def test_suite_config_roundtrip_and_unknown_fields(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(small_config().to_dict()))
    assert SuiteConfig.load(path) == small_config()
    with pytest.raises(ValueError):
        SuiteConfig.from_dict({"nope": 1})


def test_shipped_default_config_matches_dataclass():
    assert SuiteConfig.default() == SuiteConfig()
    cfg = SuiteConfig.default()
    assert len(cfg.sizes) * cfg.instances_per_size == 500
    assert max(max(s) for s in cfg.sizes) == 10


def test_escalation_rescues_underestimated_norm(monkeypatch):
    # a deliberately low first estimate must be re-certified before counting as a violation
    import hlnorm.verify as v
    real = v.operator_norm
    calls = []

    def low_first(A, pair, **opts):
        e = real(A, pair, **opts)
        calls.append(opts.get("multistarts"))
        if len(calls) <= 2:
            from dataclasses import replace
            return replace(e, value=0.01 * e.value)
        return e

    monkeypatch.setattr(v, "operator_norm", low_first)
    monkeypatch.setattr(v, "norm_via_duality", lambda A, pair, **o: low_first(A, pair, **o))
    A = np.random.default_rng(0).random((6, 6))
    cfg = SuiteConfig(multistarts=2)
    recs = check_instance(A, make_pair(3, "3/2"), "x", cfg)
    # calls: direct, dual (both halved), then the escalated estimate
    assert calls[:3] == [2, 2, 8]
    assert all(r.passed for r in recs)
    t1 = [r for r in recs if r.theorem == "T1-rows"][0]
    assert t1.rhs == pytest.approx(real(A, make_pair(3, "3/2"), multistarts=8).value)


def test_check_instance_skips_q_below_one():
    assert check_instance(np.eye(2), make_pair(2, "1/2")) == []


@pytest.mark.parametrize("n,p,q", [(2, "5/2", 1), (3, 2, "3/2"), (8, 3, 1), (9, 4, "4/3")])
def test_check_instance_identity_exactly_tight(n, p, q):
    # the dual estimate lands an ulp above the closed form on these
    recs = check_instance(np.eye(n), make_pair(p, q), f"identity-{n}")
    tight = [r for r in recs if r.theorem in ("T1-rows", "T1-cols", "T2-improved")]
    assert tight and all(r.ratio == 1.0 for r in tight)
