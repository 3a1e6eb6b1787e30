"""Opponent transition-count model."""

from __future__ import annotations

from qsmodels.opponent import OpponentModel


def test_transition_counted():
    model = OpponentModel()
    model.observe("w2", 5)
    model.observe("w1", 9)
    assert model.counts == {("w2", "w1"): 1}


def test_self_transition_ignored():
    model = OpponentModel()
    model.observe("w2", 5)
    model.observe("w2", 9)
    assert model.counts == {}


def test_stale_gap_ignored():
    model = OpponentModel()
    model.observe("w2", 5)
    model.observe("w1", 99)
    assert model.counts == {}
    assert model.last_seen == ("w1", 99)


def test_predict_argmax():
    model = OpponentModel(counts={("w2", "w1"): 3, ("w2", "w0"): 1})
    assert model.predict_next("w2") == "w1"


def test_predict_fallback_stays_put():
    assert OpponentModel().predict_next("w2") == "w2"


def test_predict_tiebreak_smallest_id():
    model = OpponentModel(counts={("w2", "w0"): 2, ("w2", "w1"): 2})
    assert model.predict_next("w2") == "w0"


def test_count_scaling_invariance():
    base = {("w2", "w1"): 3, ("w2", "w0"): 1, ("w1", "w0"): 2}
    model = OpponentModel(counts=dict(base))
    for k in (1, 2, 7, 100):
        scaled = OpponentModel(counts={key: n * k for key, n in base.items()})
        for src in ("w0", "w1", "w2"):
            assert scaled.predict_next(src) == model.predict_next(src)


def test_unrelated_sightings_do_not_change_prediction():
    model = OpponentModel()
    model.observe("w2", 0)
    model.observe("w1", 2)
    before = model.predict_next("w2")
    model.observe("w3", 4)  # elsewhere; only last_seen moves
    assert model.predict_next("w2") == before


def test_copy_is_independent():
    model = OpponentModel()
    model.observe("w2", 0)
    clone = model.copy()
    model.observe("w1", 2)
    assert clone.counts == {}
    assert model.counts == {("w2", "w1"): 1}
