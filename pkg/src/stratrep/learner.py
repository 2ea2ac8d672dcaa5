"""Exact empirical risk minimization over order-k choice rules.

Two passes over the sample: k-subsets touched by any negative item are
disqualified; the surviving k-subsets of positive items form the
positive family.  On a realizable sample the result has zero strategic
empirical error; otherwise some positive item has every k-subset inside
a negative item, and that item is returned as the infeasibility witness.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .choice import KOrderChoice
from .core import AttrSet, Instance, Sample
from .errors import BadCardinality, ConflictingLabels, NotRealizable
from .response import best_response


@dataclass
class AlgState:
    """Internals of a learning run, exposed for diagnostics and tests."""

    ZkS: set[int]                 # k-subset masks occurring inside sample items
    Zminus: set[int]              # masks inside some negative item
    Zplus: set[int]               # masks inside a positive and no negative
    Splus: list[AttrSet]
    Sminus: list[AttrSet]
    p_hat: dict[int, Fraction]    # empirical item frequencies (diagnostic only)
    enumeration_count: int        # k-subsets enumerated, for the runtime budget


@dataclass
class AlgRun:
    choice: KOrderChoice
    state: AlgState


def _collapse(sample: Sample) -> tuple[dict[int, tuple[AttrSet, int, int]], int]:
    """Collapse duplicates to (item, label, multiplicity) keyed by mask."""
    seen: dict[int, tuple[AttrSet, int, int]] = {}
    for x, y in sample.entries:
        if x.mask in seen:
            x0, y0, c0 = seen[x.mask]
            if y0 != y:
                raise ConflictingLabels(f"item {x} appears with both labels")
            seen[x.mask] = (x0, y0, c0 + 1)
        else:
            seen[x.mask] = (x, y, 1)
    return seen, sample.m


def run_alg(sample: Sample, k: int, instance: Instance) -> AlgRun:
    """The two-pass learner; raises NotRealizable with a witness item."""
    if not 1 <= k <= instance.k2:
        raise BadCardinality(f"k = {k} outside [1, k2 = {instance.k2}]")
    seen, m = _collapse(sample)
    Splus = [x for x, y, _ in seen.values() if y == 1]
    Sminus = [x for x, y, _ in seen.values() if y == -1]
    p_hat = {mask: Fraction(c, m) for mask, (_, _, c) in seen.items()}

    count = 0
    ZkS: set[int] = set()
    Zminus: set[int] = set()
    for x in Sminus:
        for c in combinations(x.indices, k):
            count += 1
            mask = 0
            for i in c:
                mask |= 1 << i
            ZkS.add(mask)
            Zminus.add(mask)
    Zplus: set[int] = set()
    witness = None
    for x in Splus:
        found = False
        for c in combinations(x.indices, k):
            count += 1
            mask = 0
            for i in c:
                mask |= 1 << i
            ZkS.add(mask)
            if mask not in Zminus:
                Zplus.add(mask)
                found = True
        if not found and witness is None:
            witness = x
    state = AlgState(ZkS, Zminus, Zplus, Splus, Sminus, p_hat, count)
    if witness is not None:
        err = NotRealizable(witness)
        err.state = state
        raise err
    fam = [AttrSet(mask, instance.q) for mask in sorted(Zplus)]
    return AlgRun(KOrderChoice(k, fam, instance), state)


def alg_learn(sample: Sample, k: int, instance: Instance) -> KOrderChoice:
    return run_alg(sample, k, instance).choice


def realizable(sample: Sample, k: int, instance: Instance):
    """(True, None) iff every positive item keeps an eligible k-subset;
    otherwise (False, witness)."""
    try:
        run_alg(sample, k, instance)
        return True, None
    except NotRealizable as e:
        return False, e.witness


def empirical_error(h, sample: Sample, instance: Instance) -> Fraction:
    """Fraction of sample items whose strategically-shown representation
    draws the wrong label."""
    seen, m = _collapse(sample)
    wrong = 0
    for x, y, c in seen.values():
        if best_response(h, x, instance).engaged != y:
            wrong += c
    return Fraction(wrong, m)


def brute_force_erm(sample: Sample, k: int, instance: Instance) -> tuple[KOrderChoice, Fraction]:
    """Tiny-instance fallback: scan every positive family over the
    k-subsets of the ground set and return a minimizer (first in
    ascending family-integer order) with its empirical error."""
    from .analysis import _family_scan_sample

    return _family_scan_sample(sample, k, instance)
