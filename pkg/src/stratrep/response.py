"""The system's response engines and exact payoff evaluation.

The strategic system shows the representation maximizing the user's
accept label; the benevolent system shows one matching the item's true
worthwhileness when possible.  Ties break lexicographically-smallest,
which is harmless: every maximizer carries the same accept label.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .choice import KOrderChoice, eval_choice_label
from .core import AttrSet, FiniteDistribution, Instance, ValueFunction, enumerate_subsets, eval_value
from .errors import NoFeasibleRepresentation


@dataclass(frozen=True)
class ResponseResult:
    representation: AttrSet
    engaged: int  # the user's label on the shown representation


@dataclass(frozen=True)
class PayoffReport:
    user_payoff: Fraction
    system_payoff: Fraction


def _feasible(x: AttrSet, instance: Instance) -> list[AttrSet]:
    if len(x) < instance.k1:
        raise NoFeasibleRepresentation(f"|{x}| < k1 = {instance.k1}")
    return enumerate_subsets(x, instance.k1, instance.k2)


def best_response(h, x: AttrSet, instance: Instance, tie: str = "min") -> ResponseResult:
    """The engagement-maximizing representation of x under h.

    With no engaging subset available, the system still shows something:
    the tie-extreme feasible representation, flagged engaged = -1.
    ``tie`` selects the lexicographic extreme among maximizers ("min" or
    "max"); the engaged flag is independent of it.
    """
    if isinstance(h, KOrderChoice):
        cands = [p for p in h.positive_family if p.issubset(x)]
        if cands and len(x) >= instance.k1:
            z = min(cands) if tie == "min" else max(cands)
            return ResponseResult(z, 1)
        feas = _feasible(x, instance)
        z = feas[0] if tie == "min" else feas[-1]
        return ResponseResult(z, -1)
    feas = _feasible(x, instance)
    engaging = [z for z in feas if eval_choice_label(h, z) == 1]
    pool = engaging or feas
    z = pool[0] if tie == "min" else pool[-1]
    return ResponseResult(z, 1 if engaging else -1)


def all_best_responses(h, x: AttrSet, instance: Instance) -> list[AttrSet]:
    """The full maximizer set; every member shares one accept label."""
    feas = _feasible(x, instance)
    engaging = [z for z in feas if eval_choice_label(h, z) == 1]
    return engaging or feas


def benevolent_response(v: ValueFunction, h, x: AttrSet, instance: Instance) -> ResponseResult:
    """A representation steering the user's label toward the truth about x."""
    target = eval_value(v, x)
    feas = _feasible(x, instance)
    for z in feas:
        if eval_choice_label(h, z) == target:
            return ResponseResult(z, target)
    return ResponseResult(feas[0], eval_choice_label(h, feas[0]))


def user_payoff(h, v: ValueFunction, D: FiniteDistribution,
                responder: str = "strategic", tie: str = "min") -> Fraction:
    """Probability that the user's realized label matches the truth."""
    inst = D.instance
    total = Fraction(0)
    for x, p in D.support:
        if responder == "strategic":
            r = best_response(h, x, inst, tie=tie)
        elif responder == "benevolent":
            r = benevolent_response(v, h, x, inst)
        else:
            raise ValueError(f"unknown responder {responder!r}")
        if r.engaged == eval_value(v, x):
            total += p
    return total


def system_payoff(h, D: FiniteDistribution) -> Fraction:
    """Probability that the user accepts the shown representation."""
    inst = D.instance
    total = Fraction(0)
    for x, p in D.support:
        if best_response(h, x, inst).engaged == 1:
            total += p
    return total


def payoffs(h, v: ValueFunction, D: FiniteDistribution,
            responder: str = "strategic") -> PayoffReport:
    return PayoffReport(user_payoff(h, v, D, responder), system_payoff(h, D))
