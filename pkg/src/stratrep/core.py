"""Ground set, items, value functions, distributions, and datasets.

Attribute sets are stored as integer bit vectors (bit i = attribute i).
Ordering everywhere is lexicographic on the ascending index tuple, which
makes every "arbitrary" choice in the engines deterministic.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from .errors import InvalidInstance, OutOfDomain, ParseError


@dataclass(frozen=True)
class Instance:
    """Game parameters: |E| = q, item size cap n, representation sizes [k1, k2]."""

    q: int
    n: int
    k1: int
    k2: int

    def __post_init__(self):
        for name in ("q", "n", "k1", "k2"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise InvalidInstance(f"{name} must be a positive integer, got {v!r}")
        if self.k1 > self.k2:
            raise InvalidInstance(f"k1 <= k2 violated: k1={self.k1} > k2={self.k2}")
        if self.k2 > self.n:
            raise InvalidInstance(f"k2 <= n violated: k2={self.k2} > n={self.n}")
        if self.n > self.q:
            raise InvalidInstance(f"n <= q violated: n={self.n} > q={self.q}")


def make_instance(q: int, n: int, k1: int, k2: int) -> Instance:
    return Instance(q, n, k1, k2)


@dataclass(frozen=True, order=False)
class AttrSet:
    """An immutable subset of the ground set [0, q), held as a bit mask."""

    mask: int
    q: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.q:
            raise OutOfDomain(f"mask {self.mask:#x} has bits outside [0, {self.q})")

    @classmethod
    def of(cls, indices: Iterable[int], q: int) -> "AttrSet":
        mask = 0
        for i in indices:
            if not 0 <= i < q:
                raise OutOfDomain(f"attribute index {i} outside [0, {q})")
            mask |= 1 << i
        return cls(mask, q)

    @property
    def indices(self) -> tuple[int, ...]:
        m, out, i = self.mask, [], 0
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return tuple(out)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def issubset(self, other: "AttrSet") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "AttrSet") -> bool:
        return self.indices < other.indices

    def __le__(self, other: "AttrSet") -> bool:
        return self.indices <= other.indices

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.indices)) + "}"


def enumerate_subsets(x: AttrSet, lo: int, hi: int) -> list[AttrSet]:
    """All subsets s of x with lo <= |s| <= hi, in lexicographic order."""
    if lo < 0 or hi < lo:
        raise ValueError(f"bad size range [{lo}, {hi}]")
    idx = x.indices
    hi = min(hi, len(idx))
    subs: list[tuple[int, ...]] = []
    for size in range(lo, hi + 1):
        if size == 0:
            continue  # the empty representation is never feasible
        subs.extend(combinations(idx, size))
    if lo == 0:
        subs.append(())
    subs.sort()
    return [AttrSet.of(s, x.q) for s in subs]


def k_subsets(q: int, k: int) -> list[AttrSet]:
    """All k-subsets of the full ground set, in lexicographic order."""
    return [AttrSet.of(c, q) for c in combinations(range(q), k)]


def all_items(instance: Instance) -> list[AttrSet]:
    """Every feasible item: subsets of E with k1 <= size <= n, lexicographic."""
    subs = []
    for size in range(instance.k1, instance.n + 1):
        subs.extend(combinations(range(instance.q), size))
    subs.sort()
    return [AttrSet.of(s, instance.q) for s in subs]


def all_representations(instance: Instance) -> list[AttrSet]:
    """Every feasible representation: size in [k1, k2], lexicographic."""
    subs = []
    for size in range(instance.k1, instance.k2 + 1):
        subs.extend(combinations(range(instance.q), size))
    subs.sort()
    return [AttrSet.of(s, instance.q) for s in subs]


# ---------------------------------------------------------------------------
# Value functions


class ValueFunction:
    """The user's ground-truth worthwhileness, as a sign over subsets.

    Three concrete forms:
      * truth table: an explicit map over every subset of size <= n,
      * existential form: +1 iff the argument contains a member of a
        fixed family of size-``ell`` subsets,
      * generator form: the item-level behavior of an order-k choice
        function (same existential semantics over its positive family).
    """

    def __init__(self, instance: Instance):
        self.instance = instance

    def label(self, x: AttrSet) -> int:
        raise NotImplementedError

    def _check(self, x: AttrSet) -> None:
        inst = self.instance
        if x.q != inst.q:
            raise OutOfDomain(f"{x} lives on a q={x.q} universe, expected q={inst.q}")
        if len(x) > inst.n:
            raise OutOfDomain(f"|{x}| > n = {inst.n}")


class TruthTable(ValueFunction):
    def __init__(self, instance: Instance, table: dict[int, int]):
        super().__init__(instance)
        self.table = dict(table)
        for mask, lab in self.table.items():
            if lab not in (-1, 1):
                raise OutOfDomain(f"label {lab!r} for mask {mask:#x} not in {{+1,-1}}")

    @classmethod
    def total(cls, instance: Instance, fn) -> "TruthTable":
        """Tabulate fn over every nonempty subset of size <= n."""
        table = {}
        for size in range(1, instance.n + 1):
            for c in combinations(range(instance.q), size):
                s = AttrSet.of(c, instance.q)
                table[s.mask] = 1 if fn(s) > 0 else -1
        return cls(instance, table)

    def label(self, x: AttrSet) -> int:
        self._check(x)
        try:
            return self.table[x.mask]
        except KeyError:
            raise OutOfDomain(f"value undefined at {x}") from None


class InducedForm(ValueFunction):
    def __init__(self, instance: Instance, ell: int, positive_family: Iterable[AttrSet]):
        super().__init__(instance)
        self.ell = ell
        self.positive_family = sorted(positive_family)
        for g in self.positive_family:
            if len(g) != ell:
                raise OutOfDomain(f"family member {g} has size != ell = {ell}")

    def label(self, x: AttrSet) -> int:
        self._check(x)
        return 1 if any(g.issubset(x) for g in self.positive_family) else -1

    def to_table(self) -> TruthTable:
        if self.instance.q > 20:
            from .errors import UniverseTooLarge

            raise UniverseTooLarge(f"q = {self.instance.q} > 20")
        return TruthTable.total(self.instance, self.label)


class KOrderForm(ValueFunction):
    """A choice function used as a value-function generator."""

    def __init__(self, instance: Instance, chooser):
        super().__init__(instance)
        self.chooser = chooser  # choice.KOrderChoice

    def label(self, x: AttrSet) -> int:
        self._check(x)
        return 1 if any(p.issubset(x) for p in self.chooser.positive_family) else -1


def eval_value(v: ValueFunction, x: AttrSet) -> int:
    """Worthwhileness label Y(x) in {+1, -1}."""
    return v.label(x)


# ---------------------------------------------------------------------------
# Distributions and samples


@dataclass(frozen=True)
class FiniteDistribution:
    """An explicit item distribution with exact rational probabilities."""

    instance: Instance
    support: tuple[tuple[AttrSet, Fraction], ...]

    def __post_init__(self):
        inst = self.instance
        seen = set()
        total = Fraction(0)
        for item, p in self.support:
            if not isinstance(p, Fraction) or p < 0:
                raise OutOfDomain(f"probability {p!r} for {item} not a nonnegative rational")
            if item.mask in seen:
                raise OutOfDomain(f"duplicate support item {item}")
            seen.add(item.mask)
            if len(item) > inst.n:
                raise OutOfDomain(f"support item {item} larger than n = {inst.n}")
            if len(item) < inst.k1:
                raise OutOfDomain(f"support item {item} smaller than k1 = {inst.k1}")
            total += p
        if total != 1:
            raise OutOfDomain(f"probabilities sum to {total}, not 1")

    @classmethod
    def of(cls, instance: Instance, pairs: Iterable[tuple[AttrSet, Fraction]]):
        return cls(instance, tuple(pairs))

    def items(self) -> list[AttrSet]:
        return [item for item, _ in self.support]


def uniform_over_full_items(instance: Instance) -> FiniteDistribution:
    """Uniform distribution over items of size exactly n."""
    items = [AttrSet.of(c, instance.q) for c in combinations(range(instance.q), instance.n)]
    p = Fraction(1, len(items))
    return FiniteDistribution.of(instance, [(x, p) for x in items])


@dataclass(frozen=True)
class Sample:
    """A labeled training set; labels in {+1, -1}."""

    instance: Instance
    entries: tuple[tuple[AttrSet, int], ...]

    def __post_init__(self):
        inst = self.instance
        for item, y in self.entries:
            if y not in (-1, 1):
                raise OutOfDomain(f"label {y!r} not in {{+1,-1}}")
            if not inst.k1 <= len(item) <= inst.n:
                raise OutOfDomain(f"sample item {item} size outside [{inst.k1}, {inst.n}]")

    @property
    def m(self) -> int:
        return len(self.entries)


def sample_dataset(D: FiniteDistribution, v: ValueFunction, m: int, seed: int) -> Sample:
    """m i.i.d. draws from D labeled by v; deterministic given seed."""
    if m < 1:
        raise ValueError("m must be >= 1")
    rng = random.Random(seed)
    items = [item for item, _ in D.support]
    cum = []
    acc = 0.0
    for _, p in D.support:
        acc += float(p)
        cum.append(acc)
    cum[-1] = 1.0
    entries = []
    for _ in range(m):
        r = rng.random()
        lo = 0
        for j, c in enumerate(cum):
            if r < c:
                lo = j
                break
        else:
            lo = len(cum) - 1
        x = items[lo]
        entries.append((x, eval_value(v, x)))
    return Sample(D.instance, tuple(entries))


# ---------------------------------------------------------------------------
# Flat-file formats
#
# Dataset file:       header "q=<int> n=<int> k1=<int> k2=<int>", then one
#                     line per entry "<+|-> <idx> <idx> ..." ascending.
# Distribution file:  same header, then "<num>/<den> <idx> ..." per item.


def _parse_header(line: str) -> Instance:
    fields = {}
    for tok in line.split():
        if "=" not in tok:
            raise ParseError(f"bad header token {tok!r}")
        key, _, val = tok.partition("=")
        try:
            fields[key] = int(val)
        except ValueError:
            raise ParseError(f"non-integer header value {tok!r}") from None
    missing = {"q", "n", "k1", "k2"} - set(fields)
    if missing:
        raise ParseError(f"header missing {sorted(missing)}")
    return Instance(fields["q"], fields["n"], fields["k1"], fields["k2"])


def _parse_indices(tokens: list[str], q: int, lineno: int) -> AttrSet:
    try:
        idx = [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"line {lineno}: non-integer attribute index") from None
    if idx != sorted(set(idx)):
        raise ParseError(f"line {lineno}: indices must be strictly ascending")
    return AttrSet.of(idx, q)


def parse_dataset(text: str) -> tuple[Instance, Sample]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty dataset file")
    inst = _parse_header(lines[0])
    entries = []
    for lineno, ln in enumerate(lines[1:], start=2):
        toks = ln.split()
        if toks[0] not in ("+", "-"):
            raise ParseError(f"line {lineno}: expected '+' or '-' label")
        y = 1 if toks[0] == "+" else -1
        entries.append((_parse_indices(toks[1:], inst.q, lineno), y))
    return inst, Sample(inst, tuple(entries))


def format_dataset(sample: Sample) -> str:
    inst = sample.instance
    out = [f"q={inst.q} n={inst.n} k1={inst.k1} k2={inst.k2}"]
    for item, y in sample.entries:
        out.append(("+" if y > 0 else "-") + " " + " ".join(map(str, item.indices)))
    return "\n".join(out) + "\n"


def parse_distribution(text: str) -> FiniteDistribution:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty distribution file")
    inst = _parse_header(lines[0])
    pairs = []
    for lineno, ln in enumerate(lines[1:], start=2):
        toks = ln.split()
        if "/" not in toks[0]:
            raise ParseError(f"line {lineno}: probability must be <num>/<den>")
        num, _, den = toks[0].partition("/")
        try:
            p = Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: bad probability {toks[0]!r}") from None
        pairs.append((_parse_indices(toks[1:], inst.q, lineno), p))
    try:
        return FiniteDistribution.of(inst, pairs)
    except OutOfDomain as e:
        raise ParseError(str(e)) from None


def format_distribution(D: FiniteDistribution) -> str:
    inst = D.instance
    out = [f"q={inst.q} n={inst.n} k1={inst.k1} k2={inst.k2}"]
    for item, p in D.support:
        out.append(f"{p.numerator}/{p.denominator} " + " ".join(map(str, item.indices)))
    return "\n".join(out) + "\n"


def parse_value_table(text: str) -> TruthTable:
    """A dataset-grammar file read as an explicit (partial) truth table."""
    inst, sample = parse_dataset(text)
    table = {}
    for item, y in sample.entries:
        if table.get(item.mask, y) != y:
            raise ParseError(f"conflicting labels for item {item}")
        table[item.mask] = y
    return TruthTable(inst, table)
