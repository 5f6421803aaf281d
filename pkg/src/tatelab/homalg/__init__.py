"""Homological algebra over the local Artinian ring R."""

from .free import Complex, FreeModule, HomalgError, RMatrix
from .functors import (ConsistencyError, bass_numbers, betti_numbers, complete_resolution, ext,
                       fib_lower_bound, hom_homology, matlis_dual, r_dual, tate_ext, tate_tor,
                       tensor_homology, tor)
from .modules import FpModule
from .presets import (PRESET_NAMES, clear_caches, length2_module, preset_module,
                      random_length2_module, residue_field)
from .resolve import (BettiTable, KernelPiece, Resolution, ResourceLimitError, budget,
                      build_complete_resolution_C, dualize, graded_kernel, min_free_resolution,
                      minimal_generators, verify_exactness)

__all__ = [
    "Complex", "FreeModule", "HomalgError", "RMatrix",
    "ConsistencyError", "bass_numbers", "betti_numbers", "complete_resolution", "ext",
    "fib_lower_bound", "hom_homology", "matlis_dual", "r_dual", "tate_ext", "tate_tor",
    "tensor_homology", "tor",
    "FpModule",
    "PRESET_NAMES", "clear_caches", "length2_module", "preset_module", "random_length2_module",
    "residue_field",
    "BettiTable", "KernelPiece", "Resolution", "ResourceLimitError", "budget",
    "build_complete_resolution_C", "dualize", "graded_kernel", "min_free_resolution",
    "minimal_generators", "verify_exactness",
]
