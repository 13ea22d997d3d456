import json
from collections import Counter

import pytest

from circdet import search
from circdet.errors import BudgetExceeded, InfeasibleStrata
from circdet.poly import IntPoly
from circdet.search import (
    MeasureRecord,
    SearchSpec,
    Strata,
    corpus_audit,
    enumerate_measures,
    exclusion_probe,
    folded_base_count,
    quadratic_base_solutions,
    read_records,
    run_search,
    run_sharded,
    stratified_family_search,
    stratum_size,
    write_records,
)

Z25 = SearchSpec(5, 2, (-1, 0, 1), 10, (5,), (3, 4))
Z27 = SearchSpec(3, 3, (0, 1), 9, (3,), None)


def _keys(records):
    return [r.to_json() for r in records]


def test_finds_known_z25_witness():
    recs = {r.F.format(): r.measure for r in enumerate_measures(Z25)}
    assert recs["1,0,0,0,1,1,0,0,0,1,1"] == 1375


def test_finds_known_z27_witness():
    recs = {r.F.format(): r.measure for r in enumerate_measures(Z27)}
    assert recs["1,0,0,0,0,0,0,0,1,1"] == 1539


def test_empty_coefficient_set():
    spec = SearchSpec(5, 2, (), 6)
    assert list(enumerate_measures(spec)) == []


def test_f1_filter_applied():
    assert all(r.profile.f_at_1 == 5 for r in enumerate_measures(Z25))


def test_deterministic():
    assert _keys(enumerate_measures(Z27)) == _keys(enumerate_measures(Z27))


@pytest.mark.parametrize("k", [2, 3, 7])
def test_shards_cover_space_exactly(k):
    spec = SearchSpec(3, 2, (-1, 0, 1), 8)
    whole = Counter(_keys(enumerate_measures(spec)))
    parts = Counter(_keys(run_sharded(spec, k)))
    assert whole == parts
    assert sum(whole.values()) == 3**9


def test_screening_agrees_with_exact_path():
    spec = SearchSpec(5, 2, (-1, 0, 1), 8, None, (2, 4))
    fast = _keys(enumerate_measures(spec))
    slow = _keys(enumerate_measures(SearchSpec(**{**spec.__dict__, "screen": False})))
    assert fast == slow and fast


def test_records_reverify_exactly():
    for r in enumerate_measures(SearchSpec(3, 3, (-1, 0, 1), 6, (3, -3), (4, 6))):
        assert MeasureRecord.build(r.F, 3, 3).to_json() == r.to_json()


def test_record_json_roundtrip_and_tamper():
    rec = MeasureRecord.build(IntPoly((1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1)), 5, 2)
    d = json.loads(rec.to_json())
    assert MeasureRecord.from_dict(d).to_json() == rec.to_json()
    assert rec.p_valuation == 3 and rec.cofactor == 11
    d["measure"] = "1376"
    with pytest.raises(ValueError):
        MeasureRecord.from_dict(d)


@pytest.mark.parametrize("suffix", [".jsonl", ".jsonl.gz"])
def test_budget_and_resume(tmp_path, monkeypatch, suffix):
    monkeypatch.setattr(search, "SUFFIX_ROWS", 64)
    spec = SearchSpec(3, 3, (0, 1), 12, (3, 9), None)
    full = tmp_path / ("full" + suffix)
    run_search(spec, str(full))
    part = tmp_path / ("part" + suffix)
    small = SearchSpec(**{**spec.__dict__, "budget": 200})
    with pytest.raises(BudgetExceeded) as exc:
        run_search(small, str(part))
    token = exc.value.resume_token
    assert token["spec_hash"] == spec.spec_hash()
    rounds = 0
    while True:
        rounds += 1
        try:
            man = run_search(small, str(part), resume=True)
            break
        except BudgetExceeded:
            continue
    assert rounds > 1 and man["complete"]
    assert _keys(read_records(str(part))) == _keys(read_records(str(full)))


def test_resume_rejects_other_spec(tmp_path):
    out = tmp_path / "a.jsonl"
    run_search(Z27, str(out))
    other = SearchSpec(3, 3, (0, 1), 8, (3,), None)
    with pytest.raises(ValueError):
        run_search(other, str(out), str(out) + ".manifest.json", resume=True)


def test_gzip_roundtrip(tmp_path):
    recs = list(enumerate_measures(Z27))
    path = str(tmp_path / "c.jsonl.gz")
    assert write_records(path, recs) == len(recs)
    assert _keys(read_records(path)) == _keys(recs)


def test_degenerate_stratum_matches_plain_search():
    spec = SearchSpec(3, 2, (-1, 0, 1), 7, (3,), None)
    plain = sorted(_keys(enumerate_measures(spec)))
    strat = sorted(_keys(stratified_family_search(3, 2, Strata(1, (3,)), spec)))
    assert plain == strat


def test_strata_pin_norms():
    spec = SearchSpec(3, 2, (0, 1), 11, (3,), None)
    st = Strata(3, (2, 1, 0))
    recs = list(stratified_family_search(3, 2, st, spec))
    assert len(recs) == stratum_size(st, spec)
    assert {r.profile.norms[0] for r in recs} == {3}


def test_infeasible_strata():
    spec = SearchSpec(3, 2, (0, 1), 8, (3,), None)
    with pytest.raises(InfeasibleStrata):
        list(stratified_family_search(3, 2, Strata(3, (2, 2, 2)), spec))
    with pytest.raises(InfeasibleStrata):
        list(stratified_family_search(3, 2, Strata(3, (5, 0, 0)), SearchSpec(3, 2, (0, 1), 8, (5,))))


def test_quadratic_base():
    assert sorted(quadratic_base_solutions()) == sorted(
        [(8, 9, 10), (8, 10, 9), (9, 8, 10), (9, 10, 8), (10, 8, 9), (10, 9, 8)]
    )


def test_folded_counts_z49():
    assert folded_base_count(7, 1, 7, 7) == 82
    assert folded_base_count(7, 1, 14, 7) == 298


@pytest.mark.slow
def test_folded_count_z81():
    assert folded_base_count(3, 2, 27, 3, class_sums=(10, 9, 8), cap=9) == 90


def _lifted_strata():
    g = (5, 1, 6, 0, 5, 1, 5, 3, 1)
    return Strata(9, g, ((0, 1), (1, 1)))


def test_lifted_family_size():
    spec = SearchSpec(3, 4, (0, 1), 80, (27,), None)
    assert stratum_size(_lifted_strata(), spec) == 635159387520


def test_lifted_family_samples_pin_two_norms():
    spec = SearchSpec(3, 4, (0, 1), 80, (27,), None)
    recs = list(stratified_family_search(3, 4, _lifted_strata(), spec, sample=20, seed=5))
    assert len(recs) == 20
    for r in recs:
        assert r.profile.f_at_1 == 27 and r.profile.norms[:2] == (3, 3)
        assert r.F.coeffs[0] == 1 and r.F.coeffs[1] == 1


def test_audit_examples():
    rec = MeasureRecord.build(IntPoly((1, 0, 0, 0, 0, 0, 0, 0, 1, 1)), 3, 3)
    rep = corpus_audit([rec])
    assert rep.clean and rep.flagged[0]["q"] == 19
    assert "Type1 mod 9" in rep.flagged[0]["tags"]
    empty = corpus_audit([])
    assert empty.records == 0 and empty.clean


def test_audit_flags_bad_record():
    rec = MeasureRecord.build(IntPoly((1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1)), 5, 2)
    rec.p_valuation = 2
    assert not corpus_audit([rec]).clean


def test_probe_small():
    spec = SearchSpec(5, 2, (-1, 0, 1), 10, (5, -5))
    rep = exclusion_probe(5, 2, 3, spec)
    assert rep.excluded_holds
    assert 11 in [m for m, _ in rep.nearest]
