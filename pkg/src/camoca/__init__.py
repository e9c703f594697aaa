"""Secret sharing with cellular automata.

Bipermutive cellular automata over finite fields generate Latin squares;
orthogonal families of them give a (2, n) threshold scheme where the secret
is a block of cells, and an anonymous variant where the secret is the rule
itself and shares are the preimages of a random block.
"""
from ._kernels import BACKEND
from .ca import (
    LocalRule,
    OpCounter,
    evaluate,
    generating_function,
    permutivity,
    rule_from_polynomial,
    rule_from_table,
    rule_from_wolfram,
    transition_matrix,
    wolfram_code,
)
from .debruijn import build_graph, coupled_recover, fusion, preimages
from .errors import CamocaError
from .gf import FieldSpec, Polynomial, field_make, poly_gcd
from .latin import (
    IndexCodec,
    LatinSquare,
    MocaFamily,
    are_orthogonal,
    build_mols,
    cayley_table,
    is_latin,
    make_family,
    max_family_size,
    orthogonal_by_gcd,
    parallel_classes,
    search_moca_bruteforce,
)
from .scheme import (
    anon_combine,
    anon_precompute,
    anon_recover,
    anon_setup,
    basic_recover,
    basic_setup,
    consistency_count,
)

__version__ = "0.1.0"
