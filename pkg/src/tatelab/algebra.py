"""Finite-dimensional graded commutative algebras given by structure constants."""

from __future__ import annotations

from functools import lru_cache

from . import linalg
from .polyring import (MarkedBasis, Poly, QuotientPresentation, groebner_check_by_hilbert,
                       mono_mul, normal_form, parse_poly, preset_presentation,
                       standard_monomials)
from .scalars import FieldConfig


class GroebnerError(ValueError):
    pass


class AlgebraError(ValueError):
    pass


class GradedAlgebra:
    """A local graded algebra with a monomial k-basis.

    ``table[i][j]`` is the sparse product ``basis[i] * basis[j]`` as a list of
    ``(index, coefficient)`` pairs.
    """

    def __init__(self, names, basis, table, field, presentation=None):
        self.names = tuple(names)
        self.basis = list(basis)
        self.dim = len(self.basis)
        self.degrees = [sum(m) for m in self.basis]
        self.table = table
        self.field = field
        self.presentation = presentation
        self.index = {m: i for i, m in enumerate(self.basis)}
        nv = len(self.names)
        self.unit_index = self.index[(0,) * nv]
        self.generator_indices = []
        for v in range(nv):
            e = [0] * nv
            e[v] = 1
            self.generator_indices.append(self.index.get(tuple(e)))
        self.top_degree = max(self.degrees)

    # -- elements ----------------------------------------------------------

    def element(self, coeffs) -> "AlgebraElement":
        return AlgebraElement(self, tuple(self.field(c) for c in coeffs))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (self.field.zero,) * self.dim)

    def basis_element(self, i: int) -> "AlgebraElement":
        c = [self.field.zero] * self.dim
        c[i] = self.field.one
        return AlgebraElement(self, tuple(c))

    def gen(self, name: str) -> "AlgebraElement":
        """Residue class of a variable; lower-case names are accepted."""
        return self.basis_element(self.generator_indices[self._var(name)])

    def _var(self, name: str) -> int:
        for i, n in enumerate(self.names):
            if n == name or n.lower() == name:
                return i
        raise KeyError(name)

    def from_poly(self, f: Poly) -> "AlgebraElement":
        """Class of a polynomial, via its normal form."""
        pres = self.presentation
        nf = normal_form(f, pres.basis) if pres is not None else f
        c = [self.field.zero] * self.dim
        for m, v in nf.terms.items():
            c[self.index[m]] += v
        return AlgebraElement(self, tuple(c))

    def parse(self, text: str) -> "AlgebraElement":
        """Parse e.g. ``"v - alpha*x"`` (lower- or upper-case variable names)."""
        cfg = self.presentation.cfg
        names = list(self.names)
        lower = {n.lower(): n for n in names}
        for lo, up in lower.items():
            if lo != up:
                text = _replace_word(text, lo, up)
        return self.from_poly(parse_poly(text, names, cfg))

    def basis_name(self, i: int) -> str:
        m = self.basis[i]
        if not any(m):
            return "1"
        return "".join(n.lower() * e for n, e in zip(self.names, m))

    # -- products ----------------------------------------------------------

    def mult_vectors(self, a, b) -> tuple:
        zero = self.field.zero
        out = [zero] * self.dim
        for i, x in enumerate(a):
            if x == 0:
                continue
            row = self.table[i]
            for j, y in enumerate(b):
                if y == 0:
                    continue
                xy = x * y
                for m, c in row[j]:
                    out[m] += xy * c
        return tuple(out)

    def left_matrix(self, a) -> list[list]:
        """Matrix (rows = output coordinate) of multiplication by ``a``."""
        zero = self.field.zero
        M = [[zero] * self.dim for _ in range(self.dim)]
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j in range(self.dim):
                for m, c in self.table[i][j]:
                    M[m][j] += x * c
        return M

    # -- checks ------------------------------------------------------------

    def check_commutative(self) -> bool:
        return all(sorted(self.table[i][j]) == sorted(self.table[j][i])
                   for i in range(self.dim) for j in range(i))

    def check_degrees(self) -> bool:
        return all(self.degrees[m] == self.degrees[i] + self.degrees[j]
                   for i in range(self.dim) for j in range(self.dim)
                   for m, _ in self.table[i][j])

    def associativity_failures(self) -> list:
        """All basis triples (i, j, l) with (b_i b_j) b_l != b_i (b_j b_l)."""
        bad = []
        e = [self.basis_element(i).coeffs for i in range(self.dim)]
        prod = [[self.mult_vectors(e[i], e[j]) for j in range(self.dim)] for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                for l in range(self.dim):
                    if self.mult_vectors(prod[i][j], e[l]) != self.mult_vectors(e[i], prod[j][l]):
                        bad.append((i, j, l))
        return bad

    def hilbert_function(self) -> list[int]:
        h = [0] * (self.top_degree + 1)
        for d in self.degrees:
            h[d] += 1
        return h

    def power_of_max_ideal_vanishes(self, n: int) -> bool:
        """True when every product of n generators is zero."""
        return all(d < n for d in self.degrees)

    def __repr__(self):
        return f"<GradedAlgebra dim={self.dim} basis={[self.basis_name(i) for i in range(self.dim)]}>"


def _replace_word(text: str, old: str, new: str) -> str:
    import re
    return re.sub(rf"\b{re.escape(old)}\b", new, text)


class AlgebraElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: GradedAlgebra, coeffs: tuple):
        if len(coeffs) != algebra.dim:
            raise AlgebraError(f"expected {algebra.dim} coefficients, got {len(coeffs)}")
        self.algebra = algebra
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return self.algebra.basis_element(self.algebra.unit_index) * other
        if other.algebra is not self.algebra:
            raise AlgebraError("elements of different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self._check(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.algebra, self.algebra.mult_vectors(self.coeffs, other.coeffs))
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, tuple(c * a for a in self.coeffs))

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and other.algebra is self.algebra and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def degrees(self) -> set:
        return {self.algebra.degrees[i] for i, c in enumerate(self.coeffs) if c != 0}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __repr__(self):
        A = self.algebra
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            name = A.basis_name(i)
            if name == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a.algebra is not b.algebra:
        raise AlgebraError("elements of different algebras")
    return a * b


def _basis_sort_key(m):
    return (sum(m), tuple(-e for e in m))


def build_algebra(pres: QuotientPresentation, maxdeg: int | None = None, verify: bool = True) -> GradedAlgebra:
    """Structure constants of P/I from normal forms of products of standard monomials.

    The marked generators must pass the Hilbert-function Groebner check; the
    check runs up to the first degree without standard monomials.
    """
    G: MarkedBasis = pres.basis
    field = pres.cfg.field
    if maxdeg is None:
        d = 0
        while standard_monomials(G, d):
            d += 1
            if d > 64:
                raise AlgebraError("quotient does not look Artinian")
        maxdeg = d
    ev = groebner_check_by_hilbert(G, maxdeg, field)
    if not ev.ok:
        d = ev.first_mismatch
        raise GroebnerError(
            f"marked generators are not a Groebner basis: degree {d} has "
            f"{ev.standard_counts[d]} standard monomials but dim (P/I)_{d} = {ev.quotient_dims[d]}")
    basis = []
    for d in range(maxdeg + 1):
        basis.extend(standard_monomials(G, d))
    basis.sort(key=_basis_sort_key)
    index = {m: i for i, m in enumerate(basis)}
    n = pres.nvars
    table = []
    for a in basis:
        row = []
        for b in basis:
            nf = normal_form(Poly.monomial(mono_mul(a, b), n, field), G)
            row.append(sorted((index[m], c) for m, c in nf.terms.items()))
        table.append(row)
    A = GradedAlgebra(pres.names, basis, table, field, pres)
    if verify:
        if not A.check_commutative():
            raise AlgebraError("structure constants are not commutative")
        if not A.check_degrees():
            raise AlgebraError("structure constants are not graded")
    return A


@lru_cache(maxsize=None)
def preset_ring(cfg: FieldConfig, name: str = "codim6-gorenstein") -> GradedAlgebra:
    return build_algebra(preset_presentation(name, cfg))


def socle(A: GradedAlgebra) -> list[tuple]:
    """Basis of {a : a*g = 0 for every variable g}.

    For a local algebra of positive dimension this lies in the maximal ideal
    automatically; for the field itself (no variables) it is everything.
    """
    rows = []
    for gi in A.generator_indices:
        if gi is None:
            continue
        rows.extend(A.left_matrix(A.basis_element(gi).coeffs))
    if not rows:
        return [A.basis_element(A.unit_index).coeffs]
    vecs, _ = linalg.kernel(A.field, rows, A.dim)
    return [tuple(v) for v in vecs]


def is_gorenstein(A: GradedAlgebra) -> bool:
    return len(socle(A)) == 1
