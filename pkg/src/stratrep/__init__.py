"""Strategic subset-representation games.

A user commits to a choice rule over truthful, cardinality-bounded
subset representations; the system best-responds to maximize
engagement.  The package provides the game engines (best response and
exact payoffs), the three user types, an exact ERM learner for
binary-weighted order-k rules, and the balance-of-power analyses, all
verified against brute-force oracles at desk scale.
"""
from .core import (
    AttrSet,
    FiniteDistribution,
    Instance,
    InducedForm,
    Sample,
    TruthTable,
    ValueFunction,
    enumerate_subsets,
    eval_value,
    make_instance,
    sample_dataset,
)
from .choice import (
    GeneralChoice,
    KOrderChoice,
    RestrictedFn,
    WeightScheme,
    eval_choice,
    eval_choice_weighted,
    induced_eval,
    lift,
    separator,
    subadditive_to_k1,
    to_k_order,
)
from .response import (
    PayoffReport,
    ResponseResult,
    all_best_responses,
    benevolent_response,
    best_response,
    system_payoff,
    user_payoff,
)
from .users import agnostic_decide, agnostic_tau, naive_choice, strategic_choice
from .learner import alg_learn, empirical_error, realizable, run_alg
from .analysis import (
    basis_distinct_check,
    brute_force_optimal,
    construct_dr_value,
    diminishing_bound,
    generalization_bound,
    induced_complexity,
    system_payoff_curve,
)
from . import errors

__version__ = "0.1.0"
