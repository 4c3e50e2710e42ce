"""Toggle-group dynamics on finite posets, alternating sign matrices,
fully-packed loops and exact Razumov-Stroganov verification."""

from .poset import Poset, PosetError, NotRankedError, CycleError, poset_from_covers
from .toggles import Action, Orbit, ROW, GYR, GYR_INVERSE, toggle, apply_word, orbit, orbit_decomposition
from .homomesy import Statistic, HomomesyReport, check_homomesy, toggleability_statistic
from .asm import AsmPoset, build_asm_poset
from .fpl import FplGrid
from .linkpatterns import LinkPattern
from .rs import LinkVector, TransferMatrix

__all__ = [
    "Poset", "PosetError", "NotRankedError", "CycleError", "poset_from_covers",
    "Action", "Orbit", "ROW", "GYR", "GYR_INVERSE", "toggle", "apply_word", "orbit", "orbit_decomposition",
    "Statistic", "HomomesyReport", "check_homomesy", "toggleability_statistic",
    "AsmPoset", "build_asm_poset", "FplGrid", "LinkPattern", "LinkVector", "TransferMatrix",
]
