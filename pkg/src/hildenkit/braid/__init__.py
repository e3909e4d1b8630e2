"""Braid words and a Garside-normal-form solution to the word problem in B_m."""

from .garside import (
    KERNEL,
    GarsideNormalForm,
    delta_word,
    equal,
    expand,
    normal_form,
    permutation_braid_word,
)
from .permutation import Permutation, finishing_set, starting_set
from .words import (
    BraidWord,
    exponent_sum,
    format_word,
    free_reduce,
    invert,
    parse_word,
    permutation_image,
    random_word,
)

__all__ = [
    "KERNEL",
    "BraidWord",
    "GarsideNormalForm",
    "Permutation",
    "delta_word",
    "equal",
    "expand",
    "exponent_sum",
    "finishing_set",
    "format_word",
    "free_reduce",
    "invert",
    "normal_form",
    "parse_word",
    "permutation_braid_word",
    "permutation_image",
    "random_word",
    "starting_set",
]
