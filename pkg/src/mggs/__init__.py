"""Multi-GGS groups on the p-regular rooted tree: portraits, coordinates, automorphisms."""

from .autgrp import AutReport, NormalizerSequence, aut_structure, compute_U, compute_V, compute_W, normalizer_sequence
from .errors import (
    DepthError,
    DimensionError,
    DomainError,
    MggsError,
    PreconditionError,
    RankError,
    ResourceError,
    UnsupportedGroupError,
)
from .groups import CONSTANT, REGULAR, SYMMETRIC, MggsGroup, construct, full_space, gupta_sidki
from .quotient import enumerate_quotient, layered, member_at_depth
from .stabilizer import b_coordinates, forced_a_coords, order_p_conjugator, regularisation_gens
from .tree import Portrait, kappa, rooted
from .words import Word, evaluate, parse_word

__version__ = "0.1.0"
