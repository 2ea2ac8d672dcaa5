"""Built-in scenarios used by the CLI and the test suite."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import AttrSet, FiniteDistribution, Instance, TruthTable, ValueFunction, uniform_over_full_items


@dataclass(frozen=True)
class Scenario:
    instance: Instance
    v: ValueFunction
    D: FiniteDistribution


def example1(eps: Fraction) -> Scenario:
    """Two attributes, singleton representations.

    Items {0} (+, eps/2), {0,1} (-, 1-eps), {1} (-, eps/2).  The naive
    user accepts {0} and rejects {1}; a strategic system shows {0} for
    the heavy negative item, driving the user's payoff down to eps.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must be in (0, 1)")
    inst = Instance(2, 2, 1, 1)
    x1 = AttrSet.of([0], 2)
    x2 = AttrSet.of([0, 1], 2)
    x3 = AttrSet.of([1], 2)
    v = TruthTable(inst, {x1.mask: 1, x2.mask: -1, x3.mask: -1})
    D = FiniteDistribution.of(inst, [
        (x1, eps / 2), (x2, 1 - eps), (x3, eps / 2)])
    return Scenario(inst, v, D)


def example2(eps: Fraction) -> Scenario:
    """Four attributes, singleton representations.

    Pairs {0,1} (+), {0,2} (-), {0,3} (-), {1,2} (-), {2,3} (+) carry
    probability (eps/4, eps/4, 1-eps, eps/4, eps/4); singletons are
    labeled (-,+,-,+).  The unlisted pair {1,3} has probability 0 and
    defaults to -1 to keep the table total.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must be in (0, 1)")
    inst = Instance(4, 2, 1, 1)

    def S(*idx):
        return AttrSet.of(idx, 4)

    labels = {
        S(0, 1).mask: 1, S(0, 2).mask: -1, S(0, 3).mask: -1,
        S(1, 2).mask: -1, S(2, 3).mask: 1, S(1, 3).mask: -1,
        S(0).mask: -1, S(1).mask: 1, S(2).mask: -1, S(3).mask: 1,
    }
    v = TruthTable(inst, labels)
    D = FiniteDistribution.of(inst, [
        (S(0, 1), eps / 4), (S(0, 2), eps / 4), (S(0, 3), 1 - eps),
        (S(1, 2), eps / 4), (S(2, 3), eps / 4)])
    return Scenario(inst, v, D)


def dr_scenario(q: int, n: int, k2: int) -> Scenario:
    """The diminishing-returns construction under the uniform size-n
    distribution."""
    from .analysis import construct_dr_value

    dr = construct_dr_value(q, n, k2)
    return Scenario(dr.instance, dr.table, uniform_over_full_items(dr.instance))
