"""Shared helpers for the test suite."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from stratrep.choice import KOrderChoice
from stratrep.core import AttrSet, FiniteDistribution, Instance, all_items


def random_instance(rng: random.Random, max_q: int = 6, max_n: int = 4) -> Instance:
    q = rng.randint(2, max_q)
    n = rng.randint(1, min(max_n, q))
    k2 = rng.randint(1, n)
    k1 = rng.randint(1, k2)
    return Instance(q, n, k1, k2)


def random_korder(rng: random.Random, instance: Instance,
                  k: int | None = None) -> KOrderChoice:
    if k is None:
        k = rng.randint(1, instance.k2)
    subs = list(combinations(range(instance.q), k))
    fam = [AttrSet.of(c, instance.q) for c in subs if rng.random() < 0.4]
    return KOrderChoice(k, fam, instance)


def random_full_support(rng: random.Random, instance: Instance) -> FiniteDistribution:
    items = all_items(instance)
    weights = [rng.randint(1, 20) for _ in items]
    total = sum(weights)
    return FiniteDistribution.of(
        instance, [(x, Fraction(w, total)) for x, w in zip(items, weights)])
