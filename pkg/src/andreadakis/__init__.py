"""Lower central series and Andreadakis filtrations on automorphisms of free groups.

Words, Magnus expansions, free Lie rings, IA and triangular automorphisms,
pure braids through the Artin action, and the Drinfeld–Kohno Lie ring, with a
seeded harness that checks where the two filtrations agree.
"""

from . import autf, braid, dk, freegroup, freelie, harness, magnus
from ._kernels import HAVE_EXTENSION
from .autf import (
    FreeAut,
    FreeEndo,
    IAWord,
    TriangularAut,
    andreadakis_degree,
    compose,
    decompose_triangular,
    evaluate,
    group_commutator,
    parse_images,
    parse_triangular,
    triangular_gamma_degree,
)
from .braid import (
    CombedForm,
    PureBraidWord,
    artin_A,
    artin_sigma,
    braid_andreadakis_degree,
    braid_gamma_degree,
    braid_to_aut,
    comb,
    parse_braid,
)
from .degree import INFINITE, AtLeast, Degree, Exact, degrees_agree, min_degree
from .dk import DKElement, braid_class_to_dk, dk_bracket, dk_dimension, parse_dk
from .errors import (
    AndreadakisError,
    BudgetExceededError,
    IndexOutOfRangeError,
    NonLieElementError,
    NotConjugationFormError,
    NotIAError,
    NotInCommutatorSubgroupError,
    NotTriangularError,
    ParseError,
    RankMismatchError,
    TruncationError,
)
from .freegroup import Word, commutator, conjugate, format_word, parse_word
from .freelie import (
    Derivation,
    LieElement,
    bracket,
    johnson,
    lyndon_basis,
    lyndon_words,
    parse_lie,
    witt_dimension,
)
from .harness import VerificationConfig, VerificationReport, run_verification
from .magnus import expand, gamma_degree, leading_lie_class
from .ncpoly import NCPoly

__version__ = "0.1.0"

__all__ = [
    "AndreadakisError",
    "AtLeast",
    "BudgetExceededError",
    "CombedForm",
    "DKElement",
    "Degree",
    "Derivation",
    "Exact",
    "FreeAut",
    "FreeEndo",
    "HAVE_EXTENSION",
    "IAWord",
    "INFINITE",
    "IndexOutOfRangeError",
    "LieElement",
    "NCPoly",
    "NonLieElementError",
    "NotConjugationFormError",
    "NotIAError",
    "NotInCommutatorSubgroupError",
    "NotTriangularError",
    "ParseError",
    "PureBraidWord",
    "RankMismatchError",
    "TriangularAut",
    "TruncationError",
    "VerificationConfig",
    "VerificationReport",
    "Word",
    "andreadakis_degree",
    "artin_A",
    "artin_sigma",
    "autf",
    "braid",
    "braid_andreadakis_degree",
    "braid_class_to_dk",
    "braid_gamma_degree",
    "braid_to_aut",
    "bracket",
    "comb",
    "commutator",
    "compose",
    "conjugate",
    "decompose_triangular",
    "degrees_agree",
    "dk",
    "dk_bracket",
    "dk_dimension",
    "evaluate",
    "expand",
    "format_word",
    "freegroup",
    "freelie",
    "gamma_degree",
    "group_commutator",
    "harness",
    "johnson",
    "leading_lie_class",
    "lyndon_basis",
    "lyndon_words",
    "magnus",
    "min_degree",
    "parse_braid",
    "parse_dk",
    "parse_images",
    "parse_lie",
    "parse_triangular",
    "parse_word",
    "run_verification",
    "triangular_gamma_degree",
    "witt_dimension",
]
