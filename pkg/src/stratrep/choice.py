"""Binary-weighted k-order choice functions, lifts, and conversions.

A k-order choice function is determined by its positive family P of
k-subsets: h(z) = +1 iff |z| >= k and some p in P is contained in z.
Equivalently, h is the sign of a weighted sum over the subsets of z of
size <= k, with weight a_plus on members of P and a_minus elsewhere.
The logical form is canonical; the weighted form exists as a cross-check.
"""
from __future__ import annotations

import itertools
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterable

from .core import AttrSet, Instance, enumerate_subsets, k_subsets
from .errors import (
    BadCardinality,
    InfeasibleRepresentation,
    InvalidWeights,
    MemoLimitExceeded,
    OutOfDomain,
    ParseError,
    SubadditivityViolated,
    UniverseTooLarge,
)


def _negative_mass_bound(k: int, n: int) -> int:
    """Count of nonempty subsets of size <= k of an n-set."""
    return sum(comb(n, i) for i in range(1, k + 1))


@dataclass(frozen=True)
class WeightScheme:
    a_plus: Fraction
    a_minus: Fraction

    @classmethod
    def default(cls, k: int, n: int) -> "WeightScheme":
        return cls(Fraction(_negative_mass_bound(k, n) + 1), Fraction(-1, 2))

    def validate(self, k: int, n: int) -> None:
        if not (-1 < self.a_minus < 0):
            raise InvalidWeights(f"a_minus = {self.a_minus} not in (-1, 0)")
        if self.a_plus <= _negative_mass_bound(k, n):
            raise InvalidWeights(
                f"a_plus = {self.a_plus} not above the negative mass bound "
                f"{_negative_mass_bound(k, n)} for (k={k}, n={n})"
            )


class KOrderChoice:
    """An order-k choice function stored as its positive k-subset family."""

    def __init__(self, k: int, positive_family: Iterable[AttrSet], instance: Instance):
        self.k = k
        self.instance = instance
        self.positive_family: tuple[AttrSet, ...] = tuple(sorted(set(positive_family)))
        if not 1 <= k <= instance.k2:
            raise BadCardinality(f"order k = {k} outside [1, k2 = {instance.k2}]")
        for p in self.positive_family:
            if len(p) != k:
                raise BadCardinality(f"positive-family member {p} has size != k = {k}")
            if p.q != instance.q:
                raise OutOfDomain(f"{p} lives outside the q = {instance.q} universe")

    def __repr__(self) -> str:
        fam = ",".join(map(str, self.positive_family))
        return f"KOrderChoice(k={self.k}, P=[{fam}])"

    def induced_table(self) -> dict[int, int]:
        """Item-level behavior x -> h(best response), as mask -> label."""
        if self.instance.q > 20:
            raise UniverseTooLarge(f"q = {self.instance.q} > 20")
        table = {}
        inst = self.instance
        for size in range(inst.k1, inst.n + 1):
            for c in itertools.combinations(range(inst.q), size):
                x = AttrSet.of(c, inst.q)
                table[x.mask] = induced_eval(self, x)
        return table

    def equivalent(self, other: "KOrderChoice") -> bool:
        """Equality as choice behavior on items, not equality of P."""
        return self.induced_table() == other.induced_table()


@dataclass(frozen=True)
class RestrictedFn:
    """A +/-1 function on subsets of size exactly ell, via its positive family."""

    ell: int
    positive_family: tuple[AttrSet, ...]

    def __post_init__(self):
        for g in self.positive_family:
            if len(g) != self.ell:
                raise BadCardinality(f"{g} has size != ell = {self.ell}")

    def label(self, z: AttrSet) -> int:
        if len(z) != self.ell:
            raise BadCardinality(f"|{z}| != ell = {self.ell}")
        return 1 if any(g.mask == z.mask for g in self.positive_family) else -1


class GeneralChoice:
    """An arbitrary deterministic choice rule over feasible representations.

    Labels are memoized up to an explicit cap; exceeding the cap raises
    rather than silently evicting, and the memo is lock-protected so
    concurrent reads see identical labels.
    """

    def __init__(self, predicate: Callable[[AttrSet], int], instance: Instance,
                 memo_cap: int = 1 << 22):
        self._predicate = predicate
        self.instance = instance
        self._memo: dict[int, int] = {}
        self._cap = memo_cap
        self._lock = threading.Lock()

    def label(self, z: AttrSet) -> int:
        inst = self.instance
        if not inst.k1 <= len(z) <= inst.k2:
            raise InfeasibleRepresentation(
                f"|{z}| outside [{inst.k1}, {inst.k2}]")
        with self._lock:
            got = self._memo.get(z.mask)
            if got is not None:
                return got
        lab = 1 if self._predicate(z) > 0 else -1
        with self._lock:
            if z.mask not in self._memo and len(self._memo) >= self._cap:
                raise MemoLimitExceeded(f"memo cap {self._cap} reached")
            self._memo[z.mask] = lab
        return lab


ChoiceLike = "KOrderChoice | GeneralChoice"


def eval_choice(h: KOrderChoice, z: AttrSet) -> int:
    inst = h.instance
    if not inst.k1 <= len(z) <= inst.k2:
        raise InfeasibleRepresentation(f"|{z}| outside [{inst.k1}, {inst.k2}]")
    if len(z) < h.k:
        return -1
    return 1 if any(p.issubset(z) for p in h.positive_family) else -1


def eval_choice_label(h, z: AttrSet) -> int:
    """Label under either a KOrderChoice or a GeneralChoice."""
    if isinstance(h, KOrderChoice):
        return eval_choice(h, z)
    return h.label(z)


def eval_choice_weighted(h: KOrderChoice, ws: WeightScheme, z: AttrSet) -> int:
    inst = h.instance
    if not inst.k1 <= len(z) <= inst.k2:
        raise InfeasibleRepresentation(f"|{z}| outside [{inst.k1}, {inst.k2}]")
    ws.validate(h.k, inst.n)
    pos = {p.mask for p in h.positive_family}
    total = Fraction(0)
    for s in enumerate_subsets(z, 1, h.k):
        total += ws.a_plus if s.mask in pos else ws.a_minus
    return 1 if total > 0 else -1


def lift(g: RestrictedFn, instance: Instance) -> GeneralChoice:
    """Extend g to all feasible sizes: +1 iff z contains a positive ell-subset."""
    if g.ell > instance.k2:
        raise BadCardinality(f"ell = {g.ell} > k2 = {instance.k2}")
    fam = g.positive_family

    def pred(z: AttrSet) -> int:
        return 1 if len(z) >= g.ell and any(p.issubset(z) for p in fam) else -1

    return GeneralChoice(pred, instance)


def induced_eval(h: KOrderChoice, x: AttrSet) -> int:
    """Item-level label with the system's best response folded in."""
    inst = h.instance
    if not inst.k1 <= len(x) <= inst.n:
        raise OutOfDomain(f"|{x}| outside item range [{inst.k1}, {inst.n}]")
    if len(x) < h.k:
        return -1
    return 1 if any(p.issubset(x) for p in h.positive_family) else -1


def to_k_order(h: GeneralChoice, instance: Instance) -> KOrderChoice:
    """Convert an arbitrary choice rule to an order-k one with the same
    item-level strategic behavior.

    k is the largest size of a minimal positive representation (a z with
    h(z) = +1 whose feasible proper subsets are all -1); if h is never
    positive, k = k1 with an empty family.  P collects the k-subsets of
    the ground set that contain some positive feasible representation.
    """
    if instance.q > 20:
        raise UniverseTooLarge(f"q = {instance.q} > 20")
    universe = AttrSet((1 << instance.q) - 1, instance.q)
    feas = enumerate_subsets(universe, instance.k1, instance.k2)
    positive = {z.mask for z in feas if h.label(z) == 1}
    if not positive:
        return KOrderChoice(instance.k1, (), instance)
    k = instance.k1
    for z in feas:
        if z.mask not in positive:
            continue
        if all(s.mask not in positive or s.mask == z.mask
               for s in enumerate_subsets(z, instance.k1, len(z))):
            k = max(k, len(z))
    P = []
    for p in k_subsets(instance.q, k):
        subs = enumerate_subsets(p, instance.k1, min(instance.k2, k))
        if any(s.mask in positive for s in subs):
            P.append(p)
    return KOrderChoice(k, P, instance)


def separator(k: int, u: AttrSet, instance: Instance) -> KOrderChoice:
    """The single-positive-subset witness used for the strict hierarchy."""
    if len(u) != k:
        raise BadCardinality(f"|{u}| = {len(u)} != k = {k}")
    return KOrderChoice(k, (u,), instance)


def threshold_choice(g: Callable[[AttrSet], Fraction], instance: Instance) -> GeneralChoice:
    """The accept-iff-positive rule h(z) = sign(g(z)) for a set function g."""
    return GeneralChoice(lambda z: 1 if g(z) > 0 else -1, instance)


def subadditive_to_k1(g: Callable[[AttrSet], Fraction], instance: Instance,
                      spot_checks: int = 64, seed: int = 0) -> KOrderChoice:
    """Collapse a subadditive threshold rule to order k1.

    P is the set of k1-subsets on which g is strictly positive.  The
    caller asserts subadditivity; disjoint pairs are spot-checked.
    """
    rng = random.Random(seed)
    for _ in range(spot_checks):
        a_idx = [i for i in range(instance.q) if rng.random() < 0.5]
        rest = [i for i in range(instance.q) if i not in a_idx]
        b_idx = [i for i in rest if rng.random() < 0.5]
        if not a_idx or not b_idx:
            continue
        A = AttrSet.of(a_idx, instance.q)
        B = AttrSet.of(b_idx, instance.q)
        U = AttrSet(A.mask | B.mask, instance.q)
        if g(U) > g(A) + g(B):
            raise SubadditivityViolated(
                f"g({U}) = {g(U)} > g({A}) + g({B}) = {g(A) + g(B)}")
    P = [z for z in k_subsets(instance.q, instance.k1) if g(z) > 0]
    return KOrderChoice(instance.k1, P, instance)


# ---------------------------------------------------------------------------
# Choice-function flat files: header "k=<int>" then one positive subset
# per line, space-separated ascending indices.


def parse_choice(text: str, instance: Instance) -> KOrderChoice:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty choice file")
    head = lines[0].strip()
    if not head.startswith("k="):
        raise ParseError(f"expected 'k=<int>' header, got {head!r}")
    try:
        k = int(head[2:])
    except ValueError:
        raise ParseError(f"bad order in header {head!r}") from None
    fam = []
    for lineno, ln in enumerate(lines[1:], start=2):
        try:
            idx = [int(t) for t in ln.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer index") from None
        if idx != sorted(set(idx)):
            raise ParseError(f"line {lineno}: indices must be strictly ascending")
        fam.append(AttrSet.of(idx, instance.q))
    try:
        return KOrderChoice(k, fam, instance)
    except (BadCardinality, OutOfDomain) as e:
        raise ParseError(str(e)) from None


def format_choice(h: KOrderChoice) -> str:
    out = [f"k={h.k}"]
    for p in h.positive_family:
        out.append(" ".join(map(str, p.indices)))
    return "\n".join(out) + "\n"
