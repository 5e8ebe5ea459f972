"""Finite semigroups as multiplication tables.

Constructions of coset attachments and Rees matrix semigroups, Green's
relations, identity checking, homomorphism and divisor search, and the
square-free word construction with its nilsemigroup of factors.
"""
from .constructions import (
    ReesSpec,
    l_coset_semigroup,
    l_flat,
    l_flat_full,
    named_small,
    r_coset_semigroup,
    r_flat,
    rees_matrix,
)
from .core import (
    CayleyTable,
    GeneratorDomain,
    close_generators,
    direct_product,
    group_elements,
    idempotents,
    quotient_by_partition,
    rees_quotient,
    verify_associativity,
)
from .errors import BudgetExceeded, CapExceeded, SemigroupError
from .green import class_counts, green_classes
from .groups import cyclic, symmetric
from .identities import parse_identity, satisfies
from .language import parse_construction
from .morphisms import Mapping, divides, find_onto_homomorphism, is_homomorphism
from .sgfile import read_sg, write_sg

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CapExceeded",
    "CayleyTable",
    "GeneratorDomain",
    "Mapping",
    "ReesSpec",
    "SemigroupError",
    "class_counts",
    "close_generators",
    "cyclic",
    "direct_product",
    "divides",
    "find_onto_homomorphism",
    "green_classes",
    "group_elements",
    "idempotents",
    "is_homomorphism",
    "l_coset_semigroup",
    "l_flat",
    "l_flat_full",
    "named_small",
    "parse_construction",
    "parse_identity",
    "quotient_by_partition",
    "r_coset_semigroup",
    "r_flat",
    "read_sg",
    "rees_matrix",
    "rees_quotient",
    "satisfies",
    "symmetric",
    "verify_associativity",
    "write_sg",
]
