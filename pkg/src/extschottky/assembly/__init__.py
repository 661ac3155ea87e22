"""Assembling extended Schottky groups from basic groups."""

from .basic import (
    KINDS,
    BasicGroupSpec,
    Element,
    Pairing,
    check_relations,
    fuchsian_group,
    make_basic,
    validate_generators,
)
from .group import DELTA_SEP, GroupAssembly, free_product, hnn_extend
from .verify import VerificationReport, verify_ping_pong
from .words import Word, count_reduced_words, enumerate_reduced_words, nested_discs, sample_limit_set

__all__ = [
    "KINDS", "BasicGroupSpec", "Element", "Pairing", "check_relations", "fuchsian_group",
    "make_basic", "validate_generators", "DELTA_SEP", "GroupAssembly", "free_product",
    "hnn_extend", "VerificationReport", "verify_ping_pong", "Word", "count_reduced_words",
    "enumerate_reduced_words", "nested_discs", "sample_limit_set",
]
