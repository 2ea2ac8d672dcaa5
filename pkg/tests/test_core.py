"""Core types: instances, attribute sets, value functions, datasets."""
from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratrep.core import (
    AttrSet,
    FiniteDistribution,
    InducedForm,
    Instance,
    Sample,
    TruthTable,
    enumerate_subsets,
    eval_value,
    format_dataset,
    format_distribution,
    make_instance,
    parse_dataset,
    parse_distribution,
    sample_dataset,
)
from stratrep.errors import InvalidInstance, OutOfDomain, ParseError

from conftest import random_full_support


def test_make_instance_ok():
    assert make_instance(4, 3, 1, 2) == Instance(4, 3, 1, 2)
    assert make_instance(400, 30, 1, 10).q == 400


def test_make_instance_violations():
    with pytest.raises(InvalidInstance, match="k1"):
        make_instance(4, 3, 3, 2)
    with pytest.raises(InvalidInstance, match="k2"):
        make_instance(4, 3, 1, 4)
    with pytest.raises(InvalidInstance, match="n"):
        make_instance(3, 4, 1, 2)
    with pytest.raises(InvalidInstance):
        make_instance(4, 0, 1, 2)


def test_attrset_basics():
    a = AttrSet.of([0, 2], 4)
    assert a.indices == (0, 2)
    assert len(a) == 2
    assert a.issubset(AttrSet.of([0, 1, 2], 4))
    assert not AttrSet.of([3], 4).issubset(a)
    with pytest.raises(OutOfDomain):
        AttrSet.of([4], 4)


def test_attrset_lex_order():
    q = 4
    sets = [AttrSet.of(s, q) for s in [(1,), (0, 2), (0,), (0, 1), (0, 1, 2)]]
    assert [s.indices for s in sorted(sets)] == [
        (0,), (0, 1), (0, 1, 2), (0, 2), (1,)]


def test_enumerate_subsets_small():
    x = AttrSet.of([0, 1], 3)
    assert [s.indices for s in enumerate_subsets(x, 1, 1)] == [(0,), (1,)]
    x = AttrSet.of([0, 1, 2], 4)
    assert len(enumerate_subsets(x, 1, 2)) == 6
    x = AttrSet.of([0, 1, 2, 3], 5)
    assert len(enumerate_subsets(x, 2, 3)) == 10


@given(st.integers(0, (1 << 12) - 1), st.integers(0, 12), st.integers(0, 12))
@settings(max_examples=200, deadline=None)
def test_enumerate_subsets_counts(mask, lo, hi):
    if lo > hi:
        lo, hi = hi, lo
    x = AttrSet(mask, 12)
    subs = enumerate_subsets(x, lo, hi)
    expect = sum(comb(len(x), i) for i in range(max(lo, 1), hi + 1))
    if lo == 0:
        expect += 1
    assert len(subs) == expect
    assert len({s.mask for s in subs}) == len(subs)
    assert subs == sorted(subs)
    assert all(s.issubset(x) for s in subs)


def test_eval_value_induced():
    inst = Instance(4, 3, 1, 2)
    v = InducedForm(inst, 2, [AttrSet.of([0, 1], 4)])
    assert eval_value(v, AttrSet.of([0, 1, 2], 4)) == 1
    assert eval_value(v, AttrSet.of([0, 2], 4)) == -1
    with pytest.raises(OutOfDomain):
        eval_value(v, AttrSet.of([0, 1, 2, 3], 4))


def test_eval_value_induced_matches_brute_scan():
    inst = Instance(5, 3, 1, 3)
    fam = [AttrSet.of([0, 1], 5), AttrSet.of([2, 4], 5)]
    v = InducedForm(inst, 2, fam)
    for x in enumerate_subsets(AttrSet((1 << 5) - 1, 5), 1, 3):
        expect = 1 if any(g.issubset(x) for g in fam) else -1
        assert eval_value(v, x) == expect


def test_truth_table_requires_defined_entries():
    inst = Instance(2, 2, 1, 1)
    v = TruthTable(inst, {0b01: 1})
    assert eval_value(v, AttrSet(0b01, 2)) == 1
    with pytest.raises(OutOfDomain):
        eval_value(v, AttrSet(0b10, 2))


def test_distribution_exact_sum():
    inst = Instance(2, 2, 1, 1)
    x1, x3 = AttrSet.of([0], 2), AttrSet.of([1], 2)
    with pytest.raises(OutOfDomain, match="sum"):
        FiniteDistribution.of(inst, [(x1, Fraction(1, 3)), (x3, Fraction(1, 3))])
    with pytest.raises(OutOfDomain, match="duplicate"):
        FiniteDistribution.of(inst, [(x1, Fraction(1, 2)), (x1, Fraction(1, 2))])
    import random

    rng = random.Random(7)
    for _ in range(20):
        from conftest import random_instance

        D = random_full_support(rng, random_instance(rng))
        assert sum(p for _, p in D.support) == 1


def test_sample_dataset_point_mass():
    inst = Instance(2, 2, 1, 1)
    x1 = AttrSet.of([0], 2)
    D = FiniteDistribution.of(inst, [(x1, Fraction(1))])
    v = TruthTable(inst, {x1.mask: 1, AttrSet.of([1], 2).mask: -1,
                          AttrSet.of([0, 1], 2).mask: -1})
    s = sample_dataset(D, v, 25, seed=3)
    assert s.m == 25
    assert all(x == x1 and y == 1 for x, y in s.entries)


def test_sample_dataset_deterministic_and_lln():
    from stratrep.examples import example1

    sc = example1(Fraction(1, 5))
    s1 = sample_dataset(sc.D, sc.v, 100_000, seed=11)
    s2 = sample_dataset(sc.D, sc.v, 100_000, seed=11)
    assert s1 == s2
    counts = {}
    for x, _ in s1.entries:
        counts[x.mask] = counts.get(x.mask, 0) + 1
    freqs = {m: c / 100_000 for m, c in counts.items()}
    assert abs(freqs[0b01] - 0.1) < 0.01
    assert abs(freqs[0b11] - 0.8) < 0.01
    assert abs(freqs[0b10] - 0.1) < 0.01


def test_dataset_roundtrip():
    inst = Instance(4, 3, 1, 2)
    s = Sample(inst, ((AttrSet.of([0, 1], 4), 1), (AttrSet.of([2], 4), -1)))
    text = format_dataset(s)
    inst2, s2 = parse_dataset(text)
    assert inst2 == inst and s2 == s


def test_distribution_roundtrip_and_rejects():
    inst = Instance(3, 2, 1, 1)
    D = FiniteDistribution.of(inst, [
        (AttrSet.of([0], 3), Fraction(1, 3)),
        (AttrSet.of([1, 2], 3), Fraction(2, 3))])
    assert parse_distribution(format_distribution(D)) == D
    with pytest.raises(ParseError):
        parse_distribution("q=3 n=2 k1=1 k2=1\n1/3 0\n1/3 1\n")  # sum != 1
    with pytest.raises(ParseError):
        parse_distribution("q=3 n=2 k1=1\n1/1 0\n")  # missing header key
    with pytest.raises(ParseError):
        parse_distribution("q=3 n=2 k1=1 k2=1\n1/2 0\n1/2 1 0\n")  # unsorted idx


def test_sample_rejects_bad_sizes():
    inst = Instance(4, 2, 2, 2)
    with pytest.raises(OutOfDomain):
        Sample(inst, ((AttrSet.of([0], 4), 1),))
    with pytest.raises(OutOfDomain):
        Sample(inst, ((AttrSet.of([0, 1, 2], 4), 1),))
