"""Fermionic formulas, Kirillov-Reshetikhin crystals and Q-system characters."""

from .characters import CharacterPoly, RepElement, chi_Q, decompose, qsystem_residual, weyl_character
from .crystals import CrystalId, KRCrystal, Tensor, combinatorial_R, kr_crystal, parse_crystal_list
from .fermionic import TensorSpec, fermionic_M, fermionic_M_all, fermionic_M_l, fermionic_N_l
from .onedsum import PathSumSpec, one_d_sum
from .qseries import LaurentPoly, qbinom_brace, qbinom_bracket
from .root_data import AlgebraId, algebra_data

__version__ = "0.1.0"

__all__ = [
    "AlgebraId",
    "CharacterPoly",
    "CrystalId",
    "KRCrystal",
    "LaurentPoly",
    "PathSumSpec",
    "RepElement",
    "Tensor",
    "TensorSpec",
    "algebra_data",
    "chi_Q",
    "combinatorial_R",
    "decompose",
    "fermionic_M",
    "fermionic_M_all",
    "fermionic_M_l",
    "fermionic_N_l",
    "kr_crystal",
    "one_d_sum",
    "parse_crystal_list",
    "qbinom_brace",
    "qbinom_bracket",
    "qsystem_residual",
    "weyl_character",
]
