"""Graded free R-modules, homogeneous matrices between them, and complexes.

An element of ``F = R(-a_0) + ... + R(-a_{r-1})`` is stored as a sparse dict
from flat index ``g*dim(R) + b`` to a field element; ``b`` indexes the k-basis
of R, so the flat index ``(g, b)`` sits in internal degree ``a_g + deg(b)``.
"""

from __future__ import annotations

from .. import linalg
from ..algebra import GradedAlgebra


class HomalgError(ValueError):
    pass


# -- sparse vector helpers ---------------------------------------------------

def vadd(acc: dict, vec: dict, scale=None) -> None:
    """acc += scale*vec in place (zeros pruned)."""
    for k, c in vec.items():
        v = acc.get(k)
        c = c if scale is None else scale * c
        v = c if v is None else v + c
        if v == 0:
            acc.pop(k, None)
        else:
            acc[k] = v


def ring_times(A: GradedAlgebra, b: int, vec: dict) -> dict:
    """Basis element ``b`` of R times a free-module vector."""
    n = A.dim
    row = A.table[b]
    out: dict = {}
    for idx, c in vec.items():
        g, j = divmod(idx, n)
        base = g * n
        for m, c2 in row[j]:
            k = base + m
            v = out.get(k)
            v = c * c2 if v is None else v + c * c2
            out[k] = v
    return {k: v for k, v in out.items() if v != 0}


def element_times(A: GradedAlgebra, r: dict, vec: dict) -> dict:
    """Ring element ``r`` ({basis index: coef}) times a free-module vector."""
    out: dict = {}
    for b, c in r.items():
        vadd(out, ring_times(A, b, vec), c)
    return out


class FreeModule:
    """Graded free module; generator ``g`` has internal degree ``twists[g]``."""

    def __init__(self, ring: GradedAlgebra, twists):
        self.ring = ring
        self.twists = tuple(int(t) for t in twists)
        self.rank = len(self.twists)
        self.dim = self.rank * ring.dim
        self._by_degree: dict[int, list[int]] | None = None

    def degree(self, idx: int) -> int:
        g, b = divmod(idx, self.ring.dim)
        return self.twists[g] + self.ring.degrees[b]

    def _index(self):
        if self._by_degree is None:
            by = {}
            for idx in range(self.dim):
                by.setdefault(self.degree(idx), []).append(idx)
            self._by_degree = by
        return self._by_degree

    def basis_in_degree(self, d: int) -> list[int]:
        return self._index().get(d, [])

    def degrees(self) -> list[int]:
        return sorted(self._index())

    def dual(self) -> "FreeModule":
        return FreeModule(self.ring, [-t for t in self.twists])

    def generator(self, g: int) -> dict:
        return {g * self.ring.dim + self.ring.unit_index: self.ring.field.one}

    def __eq__(self, other):
        return isinstance(other, FreeModule) and other.ring is self.ring and other.twists == self.twists

    def __hash__(self):
        return hash(self.twists)

    def __repr__(self):
        return f"FreeModule(rank={self.rank}, twists={list(self.twists)})"


class RMatrix:
    """Homogeneous R-linear map between graded free modules.

    ``cols[c]`` is the image of source generator ``c`` as a sparse vector of
    the target.  Entry ``(r, c)`` is a ring element of degree
    ``source.twists[c] - target.twists[r]``.
    """

    def __init__(self, source: FreeModule, target: FreeModule, cols: list[dict], check: bool = True):
        if len(cols) != source.rank:
            raise HomalgError(f"{len(cols)} columns for a source of rank {source.rank}")
        self.source = source
        self.target = target
        self.cols = [dict(c) for c in cols]
        if check:
            self.check_homogeneous()

    @property
    def ring(self) -> GradedAlgebra:
        return self.source.ring

    @classmethod
    def from_entries(cls, source: FreeModule, target: FreeModule, entries) -> "RMatrix":
        """Build from a grid ``entries[r][c]`` of AlgebraElements (or None for 0)."""
        n = source.ring.dim
        cols = []
        for c in range(source.rank):
            vec = {}
            for r in range(target.rank):
                e = entries[r][c]
                if e is None:
                    continue
                for b, x in enumerate(e.coeffs):
                    if x != 0:
                        vec[r * n + b] = x
            cols.append(vec)
        return cls(source, target, cols)

    def entry(self, r: int, c: int) -> dict:
        n = self.ring.dim
        lo = r * n
        return {k - lo: v for k, v in self.cols[c].items() if lo <= k < lo + n}

    def entries_by_column(self, c: int) -> dict[int, dict]:
        """{target generator: ring element} for column ``c``."""
        n = self.ring.dim
        out: dict[int, dict] = {}
        for k, v in self.cols[c].items():
            r, b = divmod(k, n)
            out.setdefault(r, {})[b] = v
        return out

    def check_homogeneous(self) -> None:
        for c, vec in enumerate(self.cols):
            want = self.source.twists[c]
            for k in vec:
                if self.target.degree(k) != want:
                    raise HomalgError(f"column {c} of the matrix is not homogeneous")

    def is_minimal(self) -> bool:
        """All entries lie in the maximal ideal."""
        n, u = self.ring.dim, self.ring.unit_index
        return all(k % n != u for vec in self.cols for k in vec)

    def image_of(self, idx: int) -> dict:
        """Image of the source k-basis element with flat index ``idx``."""
        g, b = divmod(idx, self.ring.dim)
        return ring_times(self.ring, b, self.cols[g])

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        n = self.ring.dim
        A = self.ring
        for idx, c in vec.items():
            g, b = divmod(idx, n)
            vadd(out, ring_times(A, b, self.cols[g]), c)
        return out

    def compose(self, other: "RMatrix") -> "RMatrix":
        """self o other."""
        if other.target != self.source:
            raise HomalgError("matrices are not composable")
        return RMatrix(other.source, self.target, [self.apply(c) for c in other.cols], check=False)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def kmatrix(self, d: int) -> tuple[list[list], list[int], list[int]]:
        """Dense k-matrix of the degree-``d`` component (rows = target basis)."""
        src = self.source.basis_in_degree(d)
        tgt = self.target.basis_in_degree(d)
        pos = {k: i for i, k in enumerate(tgt)}
        zero = self.ring.field.zero
        rows = [[zero] * len(src) for _ in tgt]
        for j, idx in enumerate(src):
            for k, v in self.image_of(idx).items():
                rows[pos[k]][j] = v
        return rows, src, tgt

    def krank(self) -> int:
        """Rank of the underlying k-linear map (summed over internal degrees)."""
        total = 0
        field = self.ring.field
        for d in self.source.degrees():
            src = self.source.basis_in_degree(d)
            cols = sorted((self.image_of(idx) for idx in src), key=len)
            total += len(linalg.sparse_pivots(field, (c for c in cols if c), self.target.dim))
        return total

    def dual(self) -> "RMatrix":
        """Hom_R(-, R): the transpose, between the dual free modules (cached)."""
        D = self.__dict__.get("_dual")
        if D is None:
            D = self._dual = self._transpose()
            D._dual = self
        return D

    def _transpose(self) -> "RMatrix":
        n = self.ring.dim
        cols = [dict() for _ in range(self.target.rank)]
        for c, vec in enumerate(self.cols):
            for k, v in vec.items():
                r, b = divmod(k, n)
                cols[r][c * n + b] = v
        return RMatrix(self.target.dual(), self.source.dual(), cols)

    def __eq__(self, other):
        return (isinstance(other, RMatrix) and self.source == other.source
                and self.target == other.target and self.cols == other.cols)

    def to_strings(self) -> list[list[str]]:
        A = self.ring
        out = []
        for r in range(self.target.rank):
            row = []
            for c in range(self.source.rank):
                e = self.entry(r, c)
                coeffs = [e.get(b, A.field.zero) for b in range(A.dim)]
                row.append(repr(A.element(coeffs)))
            out.append(row)
        return out

    def __repr__(self):
        return f"RMatrix({self.target.rank}x{self.source.rank})"


class Complex:
    """Chain complex of free modules ``C_lo <- ... <- C_hi``.

    ``maps[i]`` is ``d_i: C_i -> C_{i-1}`` for ``lo < i <= hi``.
    """

    def __init__(self, modules: dict[int, FreeModule], maps: dict[int, RMatrix]):
        self.modules = dict(modules)
        self.maps = dict(maps)
        self.lo = min(self.modules)
        self.hi = max(self.modules)
        for i, d in self.maps.items():
            if d.source != self.modules[i] or d.target != self.modules[i - 1]:
                raise HomalgError(f"d_{i} does not match the modules of the complex")

    def d(self, i: int) -> RMatrix:
        try:
            return self.maps[i]
        except KeyError:
            raise HomalgError(f"d_{i} is outside the built range [{self.lo + 1}, {self.hi}]") from None

    def ranks(self) -> dict[int, int]:
        return {i: F.rank for i, F in sorted(self.modules.items())}

    def check_d_squared(self) -> list[int]:
        """Indices i with d_i d_{i+1} != 0."""
        bad = []
        for i in sorted(self.maps):
            if i + 1 in self.maps and not self.maps[i].compose(self.maps[i + 1]).is_zero():
                bad.append(i)
        return bad

    def image_dim(self, i: int) -> int:
        return self.d(i).krank()

    def kernel_dim(self, i: int) -> int:
        if i not in self.maps:
            return self.modules[i].dim
        return self.modules[i].dim - self.maps[i].krank()

    def homology_dim(self, i: int) -> int:
        """dim_k H_i; requires d_i and d_{i+1} (or an end of the complex)."""
        if i not in self.modules:
            raise HomalgError(f"spot {i} outside the complex")
        out = self.modules[i].dim
        if i in self.maps:
            out -= self.maps[i].krank()
        elif i != self.lo:
            raise HomalgError(f"d_{i} missing")
        if i + 1 in self.maps:
            out -= self.maps[i + 1].krank()
        elif i != self.hi:
            raise HomalgError(f"d_{i + 1} missing")
        return out

    def dualize(self) -> "Complex":
        """(C*)_i = (C_{-i})*, with differential (d_{1-i})*."""
        mods = {-i: F.dual() for i, F in self.modules.items()}
        maps = {1 - i: d.dual() for i, d in self.maps.items()}
        return Complex(mods, maps)

    def truncate(self, lo: int, hi: int) -> "Complex":
        mods = {i: F for i, F in self.modules.items() if lo <= i <= hi}
        maps = {i: d for i, d in self.maps.items() if lo < i <= hi}
        return Complex(mods, maps)

    def __eq__(self, other):
        return (isinstance(other, Complex) and self.modules == other.modules
                and self.maps == other.maps)

    def __repr__(self):
        return f"Complex([{self.lo}, {self.hi}], ranks={list(self.ranks().values())})"
