"""Rank-metric nested coset coding: universal security and error correction
over F_q-linear networks, verified by exhaustive enumeration."""

__version__ = "0.1.0"

from .codes import LinearCode, dual, gabidulin, is_mrd, min_rank_distance
from .coset import NestedPair, decode_clean, encode, systematic_mrd_construction
from .errors import BudgetExceeded, NotNestedError, RanksecError, TheoremViolation
from .fields import GF, ExtFieldElement, field
from .linalg import Subspace, galois_closure, rank_fq
from .rparams import rdip, rdip_profile, rgrw, rgrw_profile
from .security import security_report, universal_equivocation

__all__ = [
    "BudgetExceeded",
    "ExtFieldElement",
    "GF",
    "LinearCode",
    "NestedPair",
    "NotNestedError",
    "RanksecError",
    "Subspace",
    "TheoremViolation",
    "decode_clean",
    "dual",
    "encode",
    "field",
    "gabidulin",
    "galois_closure",
    "is_mrd",
    "min_rank_distance",
    "rank_fq",
    "rdip",
    "rdip_profile",
    "rgrw",
    "rgrw_profile",
    "security_report",
    "systematic_mrd_construction",
    "universal_equivocation",
]
