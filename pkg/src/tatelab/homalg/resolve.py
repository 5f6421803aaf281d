"""Minimal free resolutions by degree-wise kernels and Nakayama complements."""

from __future__ import annotations

import os
from contextlib import contextmanager
from functools import lru_cache

from .. import linalg
from ..algebra import GradedAlgebra, preset_ring
from ..scalars import FieldConfig, alpha_power
from .free import Complex, FreeModule, HomalgError, RMatrix, ring_times
from .modules import FpModule, apply_cols


def _sparse_matrix(field, vecs: list[dict], coords: list[int], as_rows: bool = True):
    """flint matrix with one row (or column) per sparse vector."""
    pos = {k: i for i, k in enumerate(coords)}
    if as_rows:
        return linalg.from_sparse(field, len(vecs), len(coords),
                                  ((i, pos[k], c) for i, v in enumerate(vecs) for k, c in v.items()))
    return linalg.from_sparse(field, len(coords), len(vecs),
                              ((pos[k], i, c) for i, v in enumerate(vecs) for k, c in v.items()))


class KernelPiece:
    """k-basis of one graded piece of a kernel.

    Basis vector ``k`` is 1 at ``coords[k]`` and 0 at the other coordinate
    positions, so the coordinates of any element of the piece are its entries
    at ``coords``.
    """

    __slots__ = ("vectors", "coords", "_pos")

    def __init__(self, vectors: list[dict], coords: list[int]):
        self.vectors = vectors
        self.coords = coords
        self._pos = {c: k for k, c in enumerate(coords)}

    def __len__(self):
        return len(self.vectors)

    def coordinates(self, vec: dict) -> dict:
        pos = self._pos
        return {pos[c]: v for c, v in vec.items() if c in pos}


def graded_kernel(source: FreeModule, column) -> dict[int, KernelPiece]:
    """Per-degree k-bases of the kernel of a homogeneous map out of ``source``.

    ``column(idx)`` returns the image of the k-basis element ``idx`` as a
    sparse vector in any coordinate system compatible with the grading.
    """
    field = source.ring.field
    out = {}
    for d in source.degrees():
        src = source.basis_in_degree(d)
        images = [column(idx) for idx in src]
        rows: dict = {}
        for j, img in enumerate(images):
            for k, c in img.items():
                rows.setdefault(k, {})[j] = c
        vecs, free = linalg.sparse_kernel(field, (rows[k] for k in sorted(rows)), len(src))
        if vecs:
            out[d] = KernelPiece([{src[i]: c for i, c in v.items()} for v in vecs], [src[j] for j in free])
    return out


def minimal_generators(space: FreeModule, pieces: dict[int, KernelPiece]) -> list[tuple[int, dict]]:
    """Homogeneous elements whose classes form a k-basis of S/mS.

    ``pieces`` gives k-bases of an R-submodule S of ``space`` degree by
    degree.  Lowest degree first; inside a degree, the basis vectors of S_d at
    the non-pivot positions of the echelon form of (mS)_d.
    """
    A = space.ring
    field = A.field
    gens = []
    for d in sorted(pieces):
        K = pieces[d]
        below = pieces.get(d - 1)
        products = ()
        if below is not None:
            products = (K.coordinates(ring_times(A, gi, w))
                        for w in below.vectors for gi in A.generator_indices)
        chosen = _complement(field, products, len(K))
        gens.extend((d, K.vectors[i]) for i in chosen)
    return gens


def _complement(field, vecs, n: int) -> list[int]:
    """Coordinate positions completing span(vecs) to k^n (non-pivot columns
    of the echelon form).  ``vecs`` may be lazy; elimination stops as soon
    as the span is everything, so the remaining rows are never formed."""
    piv = set(linalg.sparse_pivots(field, vecs, n))
    return [j for j in range(n) if j not in piv]


class Resolution:
    """Minimal free resolution ``... -> F_1 -> F_0 -> X``, extended on demand.

    Either ``module`` is given (augmentation from its minimal generators) or
    ``start`` is a map whose cokernel is being resolved (``F_0``, ``F_1`` and
    ``d_1`` are then taken from it).
    """

    def __init__(self, module: FpModule | None = None, start: RMatrix | None = None):
        self.module = module
        self.free: list[FreeModule] = []
        self.maps: dict[int, RMatrix] = {}
        if start is not None:
            self.ring = start.ring
            self.free = [start.target, start.source]
            self.maps[1] = start
            self.generators = None
            return
        A = module.ring
        self.ring = A
        gens = _module_minimal_generators(module)
        self.generators = [v for _, v in gens]
        self.free = [FreeModule(A, [d for d, _ in gens])]

    @property
    def length(self) -> int:
        return len(self.free) - 1

    def _augmentation_column(self, idx: int) -> dict:
        g, b = divmod(idx, self.ring.dim)
        return apply_cols(self.module.basis_actions()[b], self.generators[g])

    def extend(self, n: int) -> "Resolution":
        """Make sure F_0, ..., F_n exist."""
        while self.length < n:
            i = self.length
            F = self.free[i]
            if i == 0:
                col = self._augmentation_column
            else:
                col = self.maps[i].image_of
            K = graded_kernel(F, col)
            gens = minimal_generators(F, K)
            G = FreeModule(self.ring, [d for d, _ in gens])
            self.free.append(G)
            self.maps[i + 1] = RMatrix(G, F, [v for _, v in gens])
        return self

    def betti(self, n: int) -> list[int]:
        self.extend(n)
        return [F.rank for F in self.free[: n + 1]]

    def betti_table(self, n: int) -> "BettiTable":
        self.extend(n)
        return BettiTable([list(F.twists) for F in self.free[: n + 1]])

    def complex(self, n: int) -> Complex:
        """F_0 <- ... <- F_n as a complex indexed 0..n."""
        self.extend(n)
        mods = {i: self.free[i] for i in range(n + 1)}
        maps = {i: self.maps[i] for i in range(1, n + 1)}
        return Complex(mods, maps)


def _module_minimal_generators(module: FpModule) -> list[tuple[int, dict]]:
    """Minimal generators of a module given by its full k-basis: in each
    degree, the basis vectors at non-pivot positions of (mX)_d."""
    gens = []
    for d in sorted(set(module.degrees)):
        idx = module.basis_in_degree(d)
        pos = {j: k for k, j in enumerate(idx)}
        mX = []
        for j in module.basis_in_degree(d - 1):
            for act in module.actions:
                if act[j]:
                    mX.append({pos[i]: c for i, c in act[j].items()})
        chosen = _complement(module.field, mX, len(idx))
        gens.extend((d, {idx[k]: module.field.one}) for k in chosen)
    return gens


class BettiTable:
    """``twists[i]`` lists the generator degrees of F_i."""

    def __init__(self, twists: list[list[int]]):
        self.twists = twists

    @property
    def totals(self) -> list[int]:
        return [len(t) for t in self.twists]

    def beta(self, i: int, j: int) -> int:
        return sum(1 for t in self.twists[i] if t == j)

    def as_dict(self) -> dict:
        return {i: {j: self.beta(i, j) for j in sorted(set(t))} for i, t in enumerate(self.twists)}

    def is_linear(self, shift: int = 0) -> bool:
        return all(t == i + shift for i, ts in enumerate(self.twists) for t in ts)

    def __repr__(self):
        return f"BettiTable(totals={self.totals})"


class ResourceLimitError(HomalgError):
    """The requested computation exceeds the configured size budget."""


# Largest graded piece (k-dimension of one internal degree of one free
# module) a resolution step may eliminate.  The default admits C_8 (pieces of
# about 1.2e5, under 1 GB) and refuses C_9 (about 5.6e5), which does not fit
# in a few GB of memory.
_BUDGET = {"max_piece": int(os.environ.get("TATELAB_MAX_PIECE", "150000"))}


@contextmanager
def budget(max_piece: int):
    old = _BUDGET["max_piece"]
    _BUDGET["max_piece"] = max_piece
    try:
        yield
    finally:
        _BUDGET["max_piece"] = old


def _largest_piece(F: FreeModule) -> int:
    return max((len(F.basis_in_degree(d)) for d in F.degrees()), default=0)


def extend_within_budget(res: Resolution, n: int) -> Resolution:
    """Extend ``res`` through F_n, refusing steps whose kernel problem is too big."""
    while res.length < n:
        F = res.free[res.length]
        piece = _largest_piece(F)
        if piece > _BUDGET["max_piece"]:
            raise ResourceLimitError(
                f"F_{res.length + 1} needs the kernel of a map out of F_{res.length} "
                f"(rank {F.rank}); its largest graded piece has dimension {piece} "
                f"> budget {_BUDGET['max_piece']}")
        res.extend(res.length + 1)
    return res


def min_free_resolution(module: FpModule, n: int) -> Resolution:
    """Minimal free resolution of ``module`` through F_n (cached on the module)."""
    if n < 0:
        raise HomalgError("resolution length must be nonnegative")
    res = getattr(module, "_resolution", None)
    if res is None:
        res = Resolution(module)
        module._resolution = res
    return extend_within_budget(res, n)


# -- the explicit complete resolution ---------------------------------------

def _d_matrix(A: GradedAlgebra, cfg: FieldConfig, i: int) -> RMatrix:
    """d_i: C_i -> C_{i-1} for i <= 1."""
    gen = {c: A.gen(c) for c in "tuvxyz"}
    if i == 1:
        src = FreeModule(A, [1, 1, 2])
        tgt = FreeModule(A, [0, 0])
        entries = [[gen["v"], gen["y"], None],
                   [gen["x"], gen["z"], gen["t"] * gen["v"]]]
        return RMatrix.from_entries(src, tgt, entries)
    a = alpha_power(cfg, i)
    src = FreeModule(A, [i, i])
    tgt = FreeModule(A, [i - 1, i - 1])
    entries = [[gen["v"], gen["y"]],
               [gen["x"] * a, gen["z"]]]
    return RMatrix.from_entries(src, tgt, entries)


@lru_cache(maxsize=None)
def _positive_part(cfg: FieldConfig) -> Resolution:
    A = preset_ring(cfg)
    return Resolution(start=_d_matrix(A, cfg, 1))


def build_complete_resolution_C(neg: int, pos: int, cfg: FieldConfig) -> Complex:
    """C_i for -neg <= i <= pos: explicit differentials for i <= 1, then the
    minimal resolution of Coker d_1.  Minimality and d^2 = 0 are checked."""
    if neg < 0 or pos < 1:
        raise HomalgError("need neg >= 0 and pos >= 1")
    A = preset_ring(cfg)
    mods, maps = {}, {}
    for i in range(-neg + 1, 2):
        d = _d_matrix(A, cfg, i)
        maps[i] = d
        mods[i] = d.source
        mods[i - 1] = d.target
    res = extend_within_budget(_positive_part(cfg), pos)
    for i in range(2, pos + 1):
        maps[i] = res.maps[i]
        mods[i] = res.free[i]
    C = Complex(mods, maps)
    # d_i d_(i+1) = 0 and minimality are checked once per index and remembered
    done = _checked_indices(cfg)
    bad = [i for i in sorted(maps) if i + 1 in maps and i not in done
           and not maps[i].compose(maps[i + 1]).is_zero()]
    if bad:
        raise HomalgError(f"d_i d_(i+1) != 0 at i = {bad}")
    if not all(d.is_minimal() for i, d in maps.items() if ("min", i) not in done):
        raise HomalgError("complete resolution is not minimal")
    done.update(i for i in maps if i + 1 in maps)
    done.update(("min", i) for i in maps)
    return C


@lru_cache(maxsize=None)
def _checked_indices(cfg: FieldConfig) -> set:
    return set()


def verify_exactness(C: Complex, spots) -> dict[int, int]:
    """dim_k H_i(C) for each requested interior spot."""
    return {i: C.homology_dim(i) for i in spots}


def dualize(C: Complex) -> Complex:
    return C.dualize()
