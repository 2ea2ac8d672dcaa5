"""The three user types: naive, agnostic, and strategic.

The naive user reuses the ground truth directly as the choice rule.
The agnostic user commits to a constant accept / reject rule calibrated
by the empirical positive rate against a Hoeffding threshold tau.  The
strategic user learns an order-k rule by exact ERM (see learner).
"""
from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .choice import GeneralChoice, KOrderChoice
from .core import Instance, Sample, ValueFunction
from .errors import DeltaOutOfWindow


def naive_choice(v: ValueFunction) -> GeneralChoice:
    """h(z) = sign(v(z)): trust every representation as if it were the item."""
    return GeneralChoice(v.label, v.instance)


def agnostic_window(m: int, delta: float) -> bool:
    """Feasibility window 2/(2+sqrt(m)) <= delta < 1/8 for the payoff guarantee."""
    return 2.0 / (2.0 + math.sqrt(m)) <= delta < 0.125


def agnostic_tau(m: int, delta: float) -> tuple[float, bool]:
    """Threshold tau = delta/(2(1-delta)) + sqrt(2 ln(1/delta) / m).

    Natural logarithm.  Returns (tau, window_ok); outside the window the
    value is still returned but the guarantee flag is off and a
    DeltaOutOfWindow warning is issued.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 0 < delta < 1:
        raise ValueError("delta must be in (0, 1)")
    tau = delta / (2.0 * (1.0 - delta)) + math.sqrt(2.0 * math.log(1.0 / delta) / m)
    ok = agnostic_window(m, delta)
    if not ok:
        warnings.warn(
            f"delta = {delta} outside [2/(2+sqrt({m})), 1/8); "
            "payoff guarantee does not apply", DeltaOutOfWindow, stacklevel=2)
    return tau, ok


@dataclass(frozen=True)
class AgnosticDecision:
    mode: str            # "AlwaysAccept" | "AlwaysReject" | "CoinFlip"
    accept: bool         # the committed constant label (+1 iff True)
    mu_hat: Fraction
    tau: float
    window_ok: bool

    def choice(self, instance: Instance) -> GeneralChoice:
        lab = 1 if self.accept else -1
        return GeneralChoice(lambda z: lab, instance)


def decide_from_counts(positives: int, m: int, delta: float, seed: int) -> AgnosticDecision:
    """The agnostic commitment given the empirical positive count.

    AlwaysAccept iff mu_hat >= 1/2 + tau, AlwaysReject iff
    mu_hat <= 1/2 - tau, otherwise one coin flip (resolved by seed)
    commits to a constant rule for the whole game.
    """
    if not 0 <= positives <= m:
        raise ValueError("positive count outside [0, m]")
    mu_hat = Fraction(positives, m)
    tau, ok = agnostic_tau(m, delta)
    if float(mu_hat) >= 0.5 + tau:
        return AgnosticDecision("AlwaysAccept", True, mu_hat, tau, ok)
    if float(mu_hat) <= 0.5 - tau:
        return AgnosticDecision("AlwaysReject", False, mu_hat, tau, ok)
    accept = random.Random(seed).random() < 0.5
    return AgnosticDecision("CoinFlip", accept, mu_hat, tau, ok)


def agnostic_decide(sample: Sample, delta: float, seed: int) -> AgnosticDecision:
    if sample.m == 0:
        raise ValueError("sample must be nonempty")
    positives = sum(1 for _, y in sample.entries if y == 1)
    return decide_from_counts(positives, sample.m, delta, seed)


def strategic_choice(sample: Sample, k: int, instance: Instance) -> KOrderChoice:
    """Exact ERM over order-k rules; raises NotRealizable with a witness
    when zero empirical error is unattainable."""
    from .learner import alg_learn

    return alg_learn(sample, k, instance)
