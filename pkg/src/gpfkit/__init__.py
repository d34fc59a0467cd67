"""Prime ideal factorizations of submodules over Noetherian polynomial
rings: filtrations by prime extensions, associated primes, and the
existence and construction of prescribed factorizations."""

from .arith import GREVLEX, LEX, PolyRing, Polynomial, TermOrder
from .errors import (
    BudgetError,
    GpfError,
    HypothesisError,
    IncompleteRegistryError,
    ParseError,
    RingMismatchError,
    VerificationError,
)
from .fields import GF, QQ
from .filtration import (
    Filtration,
    PrimeExtensionStep,
    interchange,
    max_prime_extension,
    rpe_filtration,
    verify_rpe,
)
from .gpf import (
    FactorizationTarget,
    PrimeMultiset,
    check_iff_criterion,
    check_necessary_conditions,
    check_supp_conditions,
    construct_general,
    construct_incomparable,
    construct_prime_power,
    exists_incomparable,
    gpf,
)
from .modops import (
    Ideal,
    QuotientModule,
    Submodule,
    colon_ideal,
    colon_module,
    ideal_power,
    ideal_product,
    intersect,
    module_scale,
    module_sum,
    saturate,
)
from .primes import (
    MONOMIAL,
    CandidateRegistry,
    PrimeIdeal,
    PrimeSet,
    ass_contains,
    ass_enumerate,
    ass_membership,
    incomparable,
    sort_primes,
    supp_contains,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CandidateRegistry",
    "FactorizationTarget",
    "Filtration",
    "GF",
    "GREVLEX",
    "GpfError",
    "HypothesisError",
    "Ideal",
    "IncompleteRegistryError",
    "LEX",
    "MONOMIAL",
    "ParseError",
    "PolyRing",
    "Polynomial",
    "PrimeExtensionStep",
    "PrimeIdeal",
    "PrimeMultiset",
    "PrimeSet",
    "QQ",
    "QuotientModule",
    "RingMismatchError",
    "Submodule",
    "TermOrder",
    "VerificationError",
    "ass_contains",
    "ass_enumerate",
    "ass_membership",
    "check_iff_criterion",
    "check_necessary_conditions",
    "check_supp_conditions",
    "colon_ideal",
    "colon_module",
    "construct_general",
    "construct_incomparable",
    "construct_prime_power",
    "exists_incomparable",
    "gpf",
    "ideal_power",
    "ideal_product",
    "incomparable",
    "interchange",
    "intersect",
    "max_prime_extension",
    "module_scale",
    "module_sum",
    "rpe_filtration",
    "saturate",
    "sort_primes",
    "supp_contains",
    "verify_rpe",
]
