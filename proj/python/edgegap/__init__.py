"""Hard- and soft-edge gap probabilities, LIS distributions and Haar averages."""

from fractions import Fraction

from ._core import (
    DivisionUnderflow,
    DomainError,
    EnumKind,
    Error,
    GapValue,
    Group,
    McEstimate,
    NegativeDeterminant,
    NonConvergence,
    Shape,
    SingularFactorization,
    SizeLimit,
    TransitionRow,
    ZeroDenominator,
    __version__,
    e1_hard,
    e2_hard,
    e4_hard,
    f1,
    f2,
    f4,
    group_average,
    group_average_series,
    hard_gap_hyper,
    hook_length_count,
    poissonized_lis_cdf,
    transition_scale,
    transition_sweep,
)
from ._core import _exact_lis_distribution


def exact_lis_distribution(n, kind=EnumKind.PERMUTATION):
    """Exact Pr(L <= l) for l = 1..n as Fractions (entry l-1)."""
    return [Fraction(p, q) for p, q in _exact_lis_distribution(n, kind)]
