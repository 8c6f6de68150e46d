"""Conjecture search: probe equivalence, determinism, exhaustive runs, replay."""

import json
import random

import pytest

from circhess import (
    ParameterArray,
    SearchConfig,
    prime_field,
    replay,
    search,
    split_form_build,
    verify_ch_axioms,
)
from circhess.errors import BudgetExceededError, UnsupportedFieldError
from circhess.search import _split_pattern_probe


def test_probe_equals_full_oracle(gf5):
    """The division-free screen and the idempotent-product oracle agree on
    a large random batch (both hits and misses)."""
    rng = random.Random(99)
    hits = 0
    for _ in range(1500):
        th = tuple(rng.sample(range(5), 4))
        ths = tuple(rng.sample(range(5), 4))
        ph = tuple(rng.choice([1, 2, 3, 4]) for _ in range(3))
        probe = _split_pattern_probe(gf5, th, ths, ph, 3)
        p = ParameterArray.make(gf5, th, ths, ph)
        full = verify_ch_axioms(split_form_build(p)).is_ch
        assert probe == full
        hits += full
    assert hits > 0  # the batch saw actual systems


def test_probe_equals_oracle_d4(gf7):
    rng = random.Random(3)
    for _ in range(300):
        th = tuple(rng.sample(range(7), 5))
        ths = tuple(rng.sample(range(7), 5))
        ph = tuple(rng.choice(range(1, 7)) for _ in range(4))
        probe = _split_pattern_probe(gf7, th, ths, ph, 4)
        p = ParameterArray.make(gf7, th, ths, ph)
        full = verify_ch_axioms(split_form_build(p)).is_ch
        assert probe == full


def test_search_deterministic(gf5):
    cfg = SearchConfig(gf5, 3, "random", seed=7, trials=2000)
    r1 = search(cfg)
    r2 = search(cfg)
    assert r1.to_bytes() == r2.to_bytes()
    assert r1.candidates_examined == 2000
    assert r1.ch_systems_found == r1.recurrent_count  # no counterexamples
    assert r1.counterexamples == []


def test_search_seed_changes_stream(gf5):
    a = search(SearchConfig(gf5, 3, "random", seed=1, trials=500))
    b = search(SearchConfig(gf5, 3, "random", seed=2, trials=500))
    assert a.to_bytes() != b.to_bytes()


def test_exhaustive_small_fields_complete():
    """Four distinct eigenvalues cannot exist in GF(2) or GF(3), so the
    exhaustive d = 3 spaces are empty and the runs complete instantly."""
    for p in (2, 3):
        rep = search(SearchConfig(prime_field(p), 3, "exhaustive"))
        assert rep.candidates_examined == 0
        assert rep.ch_systems_found == 0
        assert rep.counterexamples == []


def test_exhaustive_budget_gate(gf5):
    with pytest.raises(BudgetExceededError):
        search(SearchConfig(gf5, 3, "exhaustive", exhaustive_cap=100))


def test_search_needs_finite_field():
    from circhess import rationals

    with pytest.raises(UnsupportedFieldError):
        search(SearchConfig(rationals(), 3, "random", trials=10))


def test_report_file_roundtrip(tmp_path, gf5):
    path = tmp_path / "report.json"
    cfg = SearchConfig(gf5, 3, "random", seed=42, trials=500,
                       report_path=str(path))
    rep = search(cfg)
    on_disk = json.loads(path.read_text())
    assert on_disk == rep.to_json()


def test_exhaustive_gf5_slice_contains_w5(gf5, w5_array):
    """Slice of the exhaustive enumeration with theta = theta* fixed to the
    fixture's: its split tuple appears among the verified hits."""
    th = tuple(e.payload for e in w5_array.theta)
    hits = []
    import itertools

    for ph in itertools.product([1, 2, 3, 4], repeat=3):
        if _split_pattern_probe(gf5, th, th, ph, 3):
            p = ParameterArray.make(gf5, th, th, ph)
            if verify_ch_axioms(split_form_build(p)).is_ch:
                from circhess import Family, classify_family, recurrence_status

                assert recurrence_status(p).recurrent
                assert classify_family(p).family is Family.F1_GENERIC_Q
                hits.append(ph)
    assert (3, 2, 4) in hits


def test_exhaustive_gf5_full():
    """The complete GF(5), d = 3 space: every one of the 921600 candidate
    arrays is screened, every hit verifies, and all hits are recurrent."""
    g5 = prime_field(5)
    rep = search(SearchConfig(g5, 3, "exhaustive"))
    assert rep.candidates_examined == 120 * 120 * 64
    assert rep.ch_systems_found == rep.recurrent_count > 0
    assert rep.counterexamples == []
    assert set(rep.beta_histogram) == {"0"}  # q + 1/q = 2 + 3 = 0 in GF(5)


def test_replay_w5(w5_array):
    bundle = replay(w5_array)
    assert bundle["ok"]
    assert bundle["verify"]["is_ch"]
    assert bundle["recurrence"]["recurrent"]
    assert bundle["classification"]["family"] == "F1"
    assert bundle["tridiagonal_witness"]["beta"] == "0"
    assert bundle["irreducible"]
    assert bundle["vartheta"] == ["0", "1", "3", "2", "0"]
    assert bundle["bases"]["psi"] == "1"


def test_replay_non_ch(gf5):
    p = ParameterArray.make(gf5, [1, 2, 4, 3], [1, 2, 4, 3], [3, 1, 3])
    bundle = replay(p)
    assert not bundle["ok"]
    assert not bundle["verify"]["is_ch"]
    assert "recurrence" not in bundle
    assert "bases" in bundle["skipped"]


def test_replay_surfaces_internal_contradiction(monkeypatch, w5_array):
    """A classification contradiction (impossible mathematically, simulated
    here) must surface verbatim in the bundle and flip ok to False."""
    from circhess.errors import InternalContradictionError
    import circhess.families

    def boom(params):
        raise InternalContradictionError("simulated contradiction")

    monkeypatch.setattr(circhess.families, "classify_family", boom)
    bundle = replay(w5_array)
    assert not bundle["ok"]
    assert bundle["classification"]["error"] == "InternalContradiction"
    assert "simulated contradiction" in bundle["classification"]["detail"]
