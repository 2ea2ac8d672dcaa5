"""Exception types shared across the package."""


class StratRepError(Exception):
    """Base class for all package errors."""


class InvalidInstance(StratRepError):
    """Game parameters violate 1 <= k1 <= k2 <= n <= q."""


class OutOfDomain(StratRepError):
    """An item or representation falls outside the declared universe."""


class InfeasibleRepresentation(StratRepError):
    """Representation cardinality outside [k1, k2]."""


class NoFeasibleRepresentation(StratRepError):
    """Item too small to admit any representation."""


class InvalidWeights(StratRepError):
    """Weight scheme violates the binary-weight constraints for (k, n)."""


class BadCardinality(StratRepError):
    """A subset has the wrong size for the requested construction."""


class UniverseTooLarge(StratRepError):
    """Ground set too large for an exhaustive enumeration guard."""


class SearchSpaceTooLarge(StratRepError):
    """Family enumeration would exceed the brute-force budget."""


class SubadditivityViolated(StratRepError):
    """Spot check found g(A | B) > g(A) + g(B) for disjoint A, B."""


class NotRealizable(StratRepError):
    """No order-k choice function attains zero empirical error.

    Carries a witness: a positive sample item all of whose k-subsets
    appear inside some negative sample item.
    """

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"no zero-error hypothesis: witness item {witness}")


class ConflictingLabels(StratRepError):
    """The same item appears in a sample with both labels."""


class DivisibilityViolated(StratRepError):
    """A 3/4-fraction round is not integral and exactness was demanded."""


class MemoLimitExceeded(StratRepError):
    """A memoized choice function exceeded its explicit cache cap."""


class ParseError(StratRepError):
    """A data / config file does not match its documented grammar."""


class DeltaOutOfWindow(UserWarning):
    """delta falls outside the feasibility window; guarantee flag is off."""
