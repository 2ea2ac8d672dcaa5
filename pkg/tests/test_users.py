"""Naive, agnostic, and strategic user behavior."""
from __future__ import annotations

import math
from fractions import Fraction

import pytest

from stratrep.core import AttrSet, Instance, Sample, sample_dataset
from stratrep.errors import DeltaOutOfWindow
from stratrep.examples import example1, example2
from stratrep.users import (
    agnostic_decide,
    agnostic_tau,
    agnostic_window,
    decide_from_counts,
    naive_choice,
    strategic_choice,
)


def test_naive_choice_example1():
    sc = example1(Fraction(1, 5))
    h = naive_choice(sc.v)
    assert h.label(AttrSet.of([0], 2)) == 1
    assert h.label(AttrSet.of([1], 2)) == -1


def test_naive_choice_example2_singletons():
    sc = example2(Fraction(1, 5))
    h = naive_choice(sc.v)
    labels = [h.label(AttrSet.of([i], 4)) for i in range(4)]
    assert labels == [-1, 1, -1, 1]


def test_naive_constant_negative():
    inst = Instance(2, 2, 1, 1)
    from stratrep.core import TruthTable

    v = TruthTable.total(inst, lambda x: -1)
    h = naive_choice(v)
    assert h.label(AttrSet.of([0], 2)) == -1


def test_tau_value_and_window():
    tau, ok = agnostic_tau(10_000, 0.1)
    assert ok
    assert abs(tau - 0.0770153) < 1e-6
    expect = 0.1 / (2 * 0.9) + math.sqrt(2 * math.log(10.0) / 10_000)
    assert tau == pytest.approx(expect, rel=0, abs=1e-15)


def test_tau_below_half_near_window_edge():
    delta = 0.125 - 1e-9
    with pytest.warns(DeltaOutOfWindow):
        # delta is at the open upper edge; the window test excludes 1/8
        tau, _ = agnostic_tau(10_000_000, 0.125)
    tau, ok = agnostic_tau(10_000_000, delta)
    assert ok and tau < 0.5


def test_window_fails_for_tiny_m():
    assert not agnostic_window(1, 0.1)
    with pytest.warns(DeltaOutOfWindow):
        _, ok = agnostic_tau(1, 0.1)
    assert not ok


def test_tau_monotone_in_m():
    taus = [agnostic_tau(m, 0.1)[0] for m in (100, 1_000, 10_000, 100_000)]
    assert taus == sorted(taus, reverse=True)


def test_decide_modes():
    dec = decide_from_counts(10_000, 10_000, 0.1, seed=0)
    assert dec.mode == "AlwaysAccept" and dec.accept
    dec = decide_from_counts(5_000, 10_000, 0.1, seed=0)
    assert dec.mode == "CoinFlip"
    dec = decide_from_counts(0, 10_000, 0.1, seed=0)
    assert dec.mode == "AlwaysReject" and not dec.accept


def test_decide_example1_sample():
    sc = example1(Fraction(1, 5))
    s = sample_dataset(sc.D, sc.v, 10_000, seed=21)
    dec = agnostic_decide(s, 0.1, seed=0)
    assert dec.mode == "AlwaysReject"
    assert abs(float(dec.mu_hat) - 0.1) < 0.02


def test_coinflip_seed_deterministic():
    a = decide_from_counts(5_000, 10_000, 0.1, seed=5)
    b = decide_from_counts(5_000, 10_000, 0.1, seed=5)
    assert a.accept == b.accept
    outcomes = {decide_from_counts(5_000, 10_000, 0.1, seed=s).accept
                for s in range(30)}
    assert outcomes == {True, False}


def test_agnostic_constant_choice_responder_invariant():
    sc = example1(Fraction(1, 5))
    s = sample_dataset(sc.D, sc.v, 1_000, seed=2)
    dec = agnostic_decide(s, 0.1, seed=0)
    h = dec.choice(sc.instance)
    from stratrep.response import user_payoff

    assert user_payoff(h, sc.v, sc.D, "strategic") == user_payoff(
        h, sc.v, sc.D, "benevolent") or dec.mode == "CoinFlip"


def test_strategic_choice_delegates_to_learner():
    inst = Instance(3, 2, 1, 2)
    s = Sample(inst, ((AttrSet.of([0, 1], 3), 1),
                      (AttrSet.of([0, 2], 3), -1),
                      (AttrSet.of([1, 2], 3), -1)))
    h = strategic_choice(s, 2, inst)
    assert [p.indices for p in h.positive_family] == [(0, 1)]
