"""Balance-of-power analyses: induced complexity, brute-force optima,
the convexly-diminishing error construction and bound, generalization
bound, system-payoff curve, and basis certificates.

Probabilities, errors, and payoffs are exact rationals; the family scans
run on integer weights (numerators over a common denominator) through
the compiled kernels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, lgamma

from . import _kernels
from .choice import KOrderChoice, RestrictedFn
from .core import (
    AttrSet,
    FiniteDistribution,
    Instance,
    Sample,
    TruthTable,
    ValueFunction,
    all_items,
    eval_value,
    k_subsets,
)
from .errors import DivisibilityViolated, SearchSpaceTooLarge, StratRepError, UniverseTooLarge

#: Largest candidate-subset count B for which all 2^B families are scanned.
FAMILY_SCAN_LIMIT = 22


@dataclass(frozen=True)
class ComplexityReport:
    ell_star: int
    witness_g: RestrictedFn


@dataclass(frozen=True)
class BoundCurve:
    points: tuple[tuple[int, object], ...]   # (k, exact rational or float)
    params: dict


# ---------------------------------------------------------------------------
# column masks: item -> bitmask over the lexicographic k-subsets of E


def item_colmasks(items: list[AttrSet], k: int, q: int) -> list[int]:
    subs = k_subsets(q, k)
    out = []
    for x in items:
        col = 0
        for j, z in enumerate(subs):
            if z.issubset(x):
                col |= 1 << j
        out.append(col)
    return out


def family_from_bits(fbits: int, k: int, instance: Instance) -> KOrderChoice:
    subs = k_subsets(instance.q, k)
    fam = [subs[j] for j in range(len(subs)) if fbits >> j & 1]
    return KOrderChoice(k, fam, instance)


def _guard_family_scan(q: int, k: int) -> int:
    B = comb(q, k)
    if B > FAMILY_SCAN_LIMIT:
        raise SearchSpaceTooLarge(
            f"C({q},{k}) = {B} > {FAMILY_SCAN_LIMIT}: 2^{B} families not enumerable")
    return B


def _weighted_scan(items: list[AttrSet], labels: list[int],
                   weights: list[Fraction], k: int,
                   instance: Instance) -> tuple[KOrderChoice, Fraction]:
    """Minimize sum of weights over mismatched items across all families.

    The minimizer is the first minimum in ascending family-bitmask order
    (family j-th bit = j-th lexicographic k-subset).
    """
    B = _guard_family_scan(instance.q, k)
    denom = math.lcm(*[w.denominator for w in weights]) if weights else 1
    ints = [int(w * denom) for w in weights]
    cols = item_colmasks(items, k, instance.q)
    pos = [1 if y == 1 else 0 for y in labels]
    fbits, err = _kernels.min_error_scan(cols, pos, ints, 1 << B)
    return family_from_bits(fbits, k, instance), Fraction(err, denom)


def brute_force_optimal(D: FiniteDistribution, v: ValueFunction, k: int,
                        instance: Instance) -> tuple[KOrderChoice, Fraction]:
    """Exhaustive minimizer of the expected strategic error over order-k rules."""
    items = [x for x, _ in D.support]
    labels = [eval_value(v, x) for x in items]
    weights = [p for _, p in D.support]
    return _weighted_scan(items, labels, weights, k, instance)


def _family_scan_sample(sample: Sample, k: int,
                        instance: Instance) -> tuple[KOrderChoice, Fraction]:
    """Sample-weighted variant of brute_force_optimal (ERM oracle)."""
    counts: dict[int, list] = {}
    for x, y in sample.entries:
        if x.mask in counts:
            counts[x.mask][2] += 1
        else:
            counts[x.mask] = [x, y, 1]
    items = [rec[0] for rec in counts.values()]
    labels = [rec[1] for rec in counts.values()]
    weights = [Fraction(rec[2], sample.m) for rec in counts.values()]
    return _weighted_scan(items, labels, weights, k, instance)


# ---------------------------------------------------------------------------
# induced complexity


def induced_complexity(f: TruthTable, instance: Instance) -> ComplexityReport:
    """Smallest ell at which f is an existential over ell-subsets.

    Uses the maximal candidate at each ell: g(z) = +1 iff no f-negative
    item contains z.  Any feasible positive family is dominated by this
    g, so f is expressible at ell iff the maximal g covers every
    f-positive item.
    """
    if instance.q > 20:
        raise UniverseTooLarge(f"q = {instance.q} > 20")
    items = all_items(instance)
    positives = [x for x in items if f.label(x) == 1]
    negatives = [x for x in items if f.label(x) == -1]
    for ell in range(1, instance.n + 1):
        G = [z for z in k_subsets(instance.q, ell)
             if not any(z.issubset(x) for x in negatives)]
        if all(any(z.issubset(x) for z in G) for x in positives):
            return ComplexityReport(ell, RestrictedFn(ell, tuple(G)))
    raise StratRepError(
        "function is not an existential over ell-subsets for any ell <= n "
        "(some positive item is nested inside a negative one)")


# ---------------------------------------------------------------------------
# diminishing-returns construction and bound


@dataclass(frozen=True)
class DRValue:
    instance: Instance
    table: TruthTable
    #: realized positive fraction per intersection size ell (target 3/4)
    realized_fractions: dict[int, Fraction]
    anchor: AttrSet  # the distinguished k2-subset z_e = {0, ..., k2-1}


def construct_dr_value(q: int, n: int, k2: int, strict: bool = False) -> DRValue:
    """The value function whose best order-k error shrinks convexly in k.

    Anchor z_e = {0..k2-1}.  For every nonempty subset z' of z_e, among
    the size-n items whose overlap with z_e is exactly z', the
    lexicographically first 3/4 are positive; items disjoint from z_e
    are negative, as are all items of size below n.  When a class size
    is not divisible by 4 the count rounds down (strict=True raises
    instead); realized per-size fractions are reported either way.
    """
    if q > 20:
        raise UniverseTooLarge(f"q = {q} > 20: explicit table not enumerable")
    inst = Instance(q, n, 1, k2)
    anchor = AttrSet.of(range(k2), q)
    rest = list(range(k2, q))
    positive_masks: set[int] = set()
    realized: dict[int, Fraction] = {}
    for ell in range(1, min(k2, n) + 1):
        block = comb(q - k2, n - ell)
        take = (3 * block) // 4
        if strict and 3 * block % 4 != 0:
            raise DivisibilityViolated(
                f"3/4 of C({q - k2},{n - ell}) = {block} is not an integer")
        realized[ell] = Fraction(take, block) if block else Fraction(0)
        for zp in combinations(range(k2), ell):
            zp_mask = AttrSet.of(zp, q).mask
            fills = sorted(combinations(rest, n - ell))
            for fill in fills[:take]:
                positive_masks.add(AttrSet.of(sorted(zp + fill), q).mask)

    def label(x: AttrSet) -> int:
        return 1 if x.mask in positive_masks else -1

    return DRValue(inst, TruthTable.total(inst, label), realized, anchor)


def anchor_rule(k: int, q: int, n: int, k2: int) -> KOrderChoice:
    """The order-k rule engaging exactly the items that meet the anchor
    z_e = {0..k2-1} in at least k elements: P = all k-subsets of z_e."""
    inst = Instance(q, n, 1, k2)
    fam = [AttrSet.of(c, q) for c in combinations(range(k2), k)]
    return KOrderChoice(k, fam, inst)


def diminishing_bound(q: int, n: int, k2: int, k: int) -> Fraction:
    """Upper bound on the best order-k error for the constructed value:
    (1/(4 C(q,n))) * sum_{ell=k}^{k2} C(k2,ell) C(q-k2, n-ell)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    total = sum(comb(k2, ell) * comb(q - k2, n - ell) for ell in range(k, k2 + 1))
    return Fraction(total, 4 * comb(q, n))


def dr_bound_curve(q: int, n: int, k2: int) -> BoundCurve:
    pts = tuple((k, diminishing_bound(q, n, k2, k)) for k in range(1, k2 + 1))
    return BoundCurve(pts, {"q": q, "n": n, "k2": k2})


# ---------------------------------------------------------------------------
# generalization bound and system payoff curve


def generalization_bound(q: int, k: int, m: int, delta: float, epsilon: float,
                         C: float = 1.0) -> float:
    """sqrt( C * (C(q,k) ln(C(q,k)/epsilon) + ln(1/delta)) / m ), natural
    log, evaluated in log space so huge binomials cannot overflow."""
    if m < 1 or not 0 < delta < 1 or not 0 < epsilon < 1 or C <= 0:
        raise ValueError("require m >= 1, delta, epsilon in (0,1), C > 0")
    lnB = lgamma(q + 1) - lgamma(k + 1) - lgamma(q - k + 1)
    term = math.exp(lnB + math.log(lnB - math.log(epsilon)))
    return math.sqrt(C * (term + math.log(1.0 / delta)) / m)


def system_payoff_curve(q: int, n: int, k2: int) -> BoundCurve:
    """System payoff of the best order-k rule for the constructed value
    under the uniform size-n distribution, per k: the fraction of items
    meeting the anchor in at least k elements.  Strictly decreasing."""
    total = comb(q, n)
    pts = []
    for k in range(1, k2 + 1):
        hits = sum(comb(k2, ell) * comb(q - k2, n - ell) for ell in range(k, k2 + 1))
        pts.append((k, Fraction(hits, total)))
    return BoundCurve(tuple(pts), {"q": q, "n": n, "k2": k2})


# ---------------------------------------------------------------------------
# basis certificate


def basis_distinct_check(instance: Instance, k: int) -> bool:
    """True iff the C(q,k) single-positive-subset rules of order k induce
    pairwise distinct behaviors over the size-n items."""
    if instance.q > 20:
        raise UniverseTooLarge(f"q = {instance.q} > 20")
    items = [AttrSet.of(c, instance.q)
             for c in combinations(range(instance.q), instance.n)]
    tables = set()
    for u in k_subsets(instance.q, k):
        sig = tuple(1 if u.issubset(x) else -1 for x in items)
        if sig in tables:
            return False
        tables.add(sig)
    return True


# ---------------------------------------------------------------------------
# exhaustive agreement scan (containment form vs weighted-sum sign)


def bridge_violations(instance: Instance, k: int) -> int:
    """First family bitmask where the containment evaluation disagrees
    with the weighted-sum sign on some item, scanning every family of
    k-subsets over every item; -1 when all agree."""
    B = comb(instance.q, k)
    if B > FAMILY_SCAN_LIMIT:
        raise SearchSpaceTooLarge(f"C({instance.q},{k}) = {B} too large")
    items = all_items(instance)
    cols = item_colmasks(items, k, instance.q)
    gammas = [sum(comb(len(x), i) for i in range(1, min(k, len(x)) + 1))
              for x in items]
    a_plus = sum(comb(instance.n, i) for i in range(1, k + 1)) + 1
    return _kernels.bridge_scan(cols, gammas, a_plus, 1 << B)


def table_reproducible_at(target: dict[int, int], k: int, instance: Instance) -> int:
    """First order-k family whose induced behavior equals the target
    item table (mask -> label), or -1 when none exists."""
    B = _guard_family_scan(instance.q, k)
    items = all_items(instance)
    cols = item_colmasks(items, k, instance.q)
    pos = [1 if target[x.mask] == 1 else 0 for x in items]
    return _kernels.table_match(cols, pos, 1 << B)
