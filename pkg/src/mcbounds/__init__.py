"""Exact h-vector invariants and multiplicity bounds for codimension 3 artinian algebras."""

from .compressed import (
    BettiEdge,
    CompressedProfile,
    McBoundPair,
    McCase,
    NotCompressedError,
    betti_edge,
    compressed_mc_bounds,
    fl_numbers,
    multiplicity_formula,
    recover_socle,
)
from .hilbert_core import (
    FProfile,
    HVector,
    InvariantSet,
    SocleVector,
    binom,
    dim_n,
    f_profile,
    invariants,
    is_o_sequence,
    macaulay_growth,
    macaulay_rep,
    multiplicity,
    multiplicity_from_profile,
    parse_vector,
)
from .level_bounds import (
    BoundReport,
    Tag,
    Verdict,
    check_bounds,
    classify_37,
    conjecture_bounds,
    forced_shifts,
    mc_bounds_from_shifts,
)

__all__ = [
    "betti_edge",
    "BettiEdge",
    "binom",
    "BoundReport",
    "check_bounds",
    "classify_37",
    "compressed_mc_bounds",
    "CompressedProfile",
    "conjecture_bounds",
    "dim_n",
    "f_profile",
    "fl_numbers",
    "forced_shifts",
    "FProfile",
    "HVector",
    "invariants",
    "InvariantSet",
    "is_o_sequence",
    "macaulay_growth",
    "macaulay_rep",
    "mc_bounds_from_shifts",
    "McBoundPair",
    "McCase",
    "multiplicity",
    "multiplicity_formula",
    "multiplicity_from_profile",
    "NotCompressedError",
    "parse_vector",
    "recover_socle",
    "SocleVector",
    "Tag",
    "Verdict",
]

__version__ = "0.1.0"
