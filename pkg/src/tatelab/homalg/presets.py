"""The named modules over R and the length-two sampler."""

from __future__ import annotations

import random
from functools import lru_cache

from ..algebra import GradedAlgebra, preset_ring
from ..scalars import FieldConfig
from .free import FreeModule, HomalgError, RMatrix
from .modules import FpModule
from .resolve import _checked_indices, _d_matrix, _positive_part, build_complete_resolution_C

PRESET_NAMES = ("M", "N", "Nq", "E", "k", "R", "cokerd1")


def residue_field(A: GradedAlgebra) -> FpModule:
    k = getattr(A, "_residue_field", None)
    if k is None:
        k = FpModule.cyclic(A, [A.gen(n) for n in A.names], "k")
        A._residue_field = k
    return k


def _tate_from_C(cfg: FieldConfig):
    """T = Hom_R(C, R): T_i = (C_{-i})^*, so T on [lo, hi] needs C on [-hi, -lo]."""
    def factory(lo: int, hi: int):
        C = build_complete_resolution_C(max(hi, 0), max(-lo, 1), cfg)
        return C.truncate(-hi, -lo).dualize()
    return factory


@lru_cache(maxsize=None)
def preset_module(name: str, cfg: FieldConfig, q: int | None = None) -> FpModule:
    """One of M, N, Nq (with q >= 1), E, k, R, cokerd1."""
    A = preset_ring(cfg)
    if name == "M":
        d0 = _d_matrix(A, cfg, 0)
        mod = FpModule.cokernel(d0.dual(), "M")
        mod.complete_factory = _tate_from_C(cfg)
        return mod
    if name == "N":
        return FpModule.cyclic(A, [A.parse(f) for f in ("t", "u", "v - x", "y - x", "z - x")], "N")
    if name == "Nq":
        if q is None or q < 1:
            raise HomalgError("Nq needs q >= 1")
        a = cfg.alpha_scalar ** q
        forms = [A.gen("t"), A.gen("u"), A.gen("v") - A.gen("x") * a,
                 A.gen("v") - A.gen("y"), A.gen("v") - A.gen("z")]
        return FpModule.cyclic(A, forms, f"N{q}")
    if name == "E":
        return FpModule.kernel(_d_matrix(A, cfg, 1), "E")
    if name == "cokerd1":
        return FpModule.cokernel(_d_matrix(A, cfg, 1), "Coker d1")
    if name == "k":
        return residue_field(A)
    if name == "R":
        zero = RMatrix(FreeModule(A, []), FreeModule(A, [0]), [])
        return FpModule.cokernel(zero, "R")
    raise HomalgError(f"unknown preset module {name!r}; choose from {', '.join(PRESET_NAMES)}")


def length2_module(A: GradedAlgebra, ell) -> FpModule:
    """R/(ker(ell) + m^2) for a nonzero functional ell on the variables,
    or k + k (both in degree 0) when ell is None."""
    field = A.field
    nv = len(A.names)
    if ell is None:
        return FpModule(A, [0, 0], [[{}, {}] for _ in range(nv)], "k+k")
    ell = [field(c) for c in ell]
    if all(c == 0 for c in ell):
        raise HomalgError("the functional must be nonzero")
    actions = [[{1: c} if c != 0 else {}, {}] for c in ell]
    return FpModule(A, [0, 1], actions, "L")


def random_length2_module(seed: int, cfg: FieldConfig) -> FpModule:
    """A length-two module, deterministic per seed.

    One seed in eight gives k + k; otherwise a hyperplane V of m/m^2 is drawn
    as the kernel of a functional with entries in [-9, 9] and the module is
    R/(V + m^2).
    """
    A = preset_ring(cfg)
    rng = random.Random(seed)
    if rng.randrange(8) == 0:
        return length2_module(A, None)
    while True:
        ell = [rng.randint(-9, 9) for _ in A.names]
        if any(cfg.field(c) != 0 for c in ell):
            break
    mod = length2_module(A, ell)
    mod.name = f"L[{seed}]"
    return mod


def clear_caches() -> None:
    """Drop every cached ring, module and resolution (they can hold GBs)."""
    preset_module.cache_clear()
    preset_ring.cache_clear()
    _positive_part.cache_clear()
    _checked_indices.cache_clear()
