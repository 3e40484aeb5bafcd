"""Pure braid groups through the Artin action on free groups."""

from .core import (
    CombedForm,
    PureBraidWord,
    almost_direct,
    artin_A,
    artin_sigma,
    braid_andreadakis_degree,
    braid_commutator,
    braid_andreadakis_degree_words,
    braid_gamma_degree,
    braid_images,
    braid_series_images,
    braid_to_aut,
    braids_equal,
    comb,
    conjugation_parallel,
    format_braid,
    kernel_commutator,
    kernel_letters,
    left_normed_braid_commutator,
    parallels,
    parallels_degree,
    parse_braid,
    random_braid,
    sample_braid,
    sigma_word_to_aut,
    table_value,
)

__all__ = [
    "CombedForm",
    "PureBraidWord",
    "almost_direct",
    "artin_A",
    "artin_sigma",
    "braid_andreadakis_degree",
    "braid_commutator",
    "braid_andreadakis_degree_words",
    "braid_gamma_degree",
    "braid_images",
    "braid_series_images",
    "braid_to_aut",
    "braids_equal",
    "comb",
    "conjugation_parallel",
    "format_braid",
    "kernel_commutator",
    "kernel_letters",
    "left_normed_braid_commutator",
    "parallels",
    "parallels_degree",
    "parse_braid",
    "random_braid",
    "sample_braid",
    "sigma_word_to_aut",
    "table_value",
]
