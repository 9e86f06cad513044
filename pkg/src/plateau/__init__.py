"""Exact analysis of plateaued Boolean functions and their Cayley graphs."""

from .boolfun import (
    AnfPolynomial,
    BooleanFunction,
    anf_to_function,
    degree,
    from_hex,
    from_truth_table,
    function_to_anf,
    is_balanced,
    parse_anf,
    support,
    weight,
)
from .classify import PlateauReport, classify_plateaued, predicted_multiplicities
from .kernels import BACKEND
from .regularity import full_characterization
from .transform import SpectrumKind, SpectrumVector, fourier, parseval_check, walsh_hadamard

__version__ = "0.1.0"

__all__ = [
    "AnfPolynomial",
    "BACKEND",
    "BooleanFunction",
    "PlateauReport",
    "SpectrumKind",
    "SpectrumVector",
    "anf_to_function",
    "classify_plateaued",
    "degree",
    "fourier",
    "from_hex",
    "from_truth_table",
    "full_characterization",
    "function_to_anf",
    "is_balanced",
    "parse_anf",
    "predicted_multiplicities",
    "support",
    "walsh_hadamard",
    "weight",
]
