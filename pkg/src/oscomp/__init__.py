"""Computations in positively ordered abelian semigroups.

The package decides stable domination, n-comparison and its weak and
countable variants on finitely generated models, works in the interval
completion of such a model, and checks the (strong) common-fraction
property on eventually periodic sequences.
"""
from . import kernels
from .comparison import (
    ComparisonVerdict,
    Status,
    check_criteria_agreement,
    check_prop21_agreement,
    is_full_element,
    n_comparison,
    omega_surrogate,
    stable_dom_via_states,
    stably_dominated,
    tail_property_check,
)
from .completion import (
    TOP,
    ArithmeticChain,
    CfpInstance,
    ChainGenerated,
    Completion,
    Principal,
    SequenceDescriptor,
    discrete_cfp_scan,
    discretize_strong_instance,
)
from .errors import (
    OscompError,
    ValueOutOfBound,
    NegativeInput,
    NotAMember,
    WrongKind,
    UnsupportedOrderMode,
    ZeroNormalizer,
    PreconditionViolated,
    BoundTooSmall,
    IncompatibleModels,
    UndecidableAtBound,
    NotIncreasing,
    NoFullElement,
    OracleFailure,
    NoFullPair,
    ParseError,
)
from .semigroup import (
    ALGEBRAIC,
    INDUCED,
    AffineSemigroup,
    DirectSum,
    NumericalSemigroup,
    OrderMode,
    SumElem,
    add,
    enumerate_elements,
    frobenius,
    leq,
    member,
    numerical,
    propto,
)
from .states import state_cone

__all__ = [
    "ALGEBRAIC",
    "AffineSemigroup",
    "ArithmeticChain",
    "BoundTooSmall",
    "CfpInstance",
    "ChainGenerated",
    "ComparisonVerdict",
    "Completion",
    "DirectSum",
    "INDUCED",
    "IncompatibleModels",
    "NegativeInput",
    "NoFullElement",
    "NoFullPair",
    "NotAMember",
    "NotIncreasing",
    "NumericalSemigroup",
    "OracleFailure",
    "OrderMode",
    "OscompError",
    "ParseError",
    "PreconditionViolated",
    "Principal",
    "SequenceDescriptor",
    "Status",
    "SumElem",
    "TOP",
    "UndecidableAtBound",
    "UnsupportedOrderMode",
    "ValueOutOfBound",
    "WrongKind",
    "ZeroNormalizer",
    "add",
    "check_criteria_agreement",
    "check_prop21_agreement",
    "discrete_cfp_scan",
    "discretize_strong_instance",
    "enumerate_elements",
    "frobenius",
    "is_full_element",
    "kernels",
    "leq",
    "member",
    "n_comparison",
    "numerical",
    "omega_surrogate",
    "propto",
    "stable_dom_via_states",
    "stably_dominated",
    "state_cone",
    "tail_property_check",
]

__version__ = "0.1.0"
