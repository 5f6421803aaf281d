"""Divided powers, the contraction action, and the inverse-system certificate
for the socle of R."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, prod

from . import linalg
from .polyring import (MarkedBasis, Poly, count_monomials, mono_divides, mono_div,
                       monomials_of_degree, parse_poly, quotient_dimension)
from .scalars import ConfigError, FieldConfig

DUAL_NAMES = ("tT", "tU", "tV", "tX", "tY", "tZ")

# The cubic, written with ordinary products of the dual variables.
DEFAULT_FORM = ("-3*tZ*tY^2 + tX^3 - 3*tZ*tT^2 + 3*tY*tT^2 + 6*tZ*tU*tV"
                " + 3*tY^2*tV + 3*tX^2*tV + 6*tX*tT*tV - 3*alpha*tZ*(tX + tT)^2")

SOCLE_DEGREE = 3


class DPElement:
    """Element of the divided power algebra: {exponent tuple: coefficient}
    on the basis T^[N]."""

    __slots__ = ("terms", "field")

    def __init__(self, terms: dict, field):
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self.field = field

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max(sum(m) for m in self.terms) if self.terms else -1

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def __eq__(self, other):
        return isinstance(other, DPElement) and other.terms == self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), reverse=True):
            mon = "*".join(f"{n}^[{e}]" for n, e in zip(DUAL_NAMES, m) if e) or "1"
            parts.append(f"{c}*{mon}")
        return " + ".join(parts)


def _check_field(cfg: FieldConfig) -> None:
    if cfg.p in (2, 3):
        raise ConfigError("the inverse-system certificate needs characteristic 0 or > 3")


def from_ordinary(f: Poly) -> DPElement:
    """Rewrite a polynomial in the dual variables on the divided-power basis,
    using T^N = N! T^[N]."""
    field = f.field
    return DPElement({m: c * field(prod(factorial(e) for e in m)) for m, c in f.terms.items()}, field)


def apolar_form(cfg: FieldConfig, text: str = DEFAULT_FORM) -> DPElement:
    """Parse a form in tT..tZ (``alpha`` allowed) into a divided-power element."""
    _check_field(cfg)
    F = from_ordinary(parse_poly(text, DUAL_NAMES, cfg))
    if not F.is_homogeneous():
        raise ValueError("the form must be homogeneous")
    return F


def contract(g: Poly, e: DPElement) -> DPElement:
    """g o e, with T^M o T^[N] = T^[N - M] when M <= N and 0 otherwise."""
    out: dict = {}
    zero = e.field.zero
    for m, c in g.terms.items():
        for n, a in e.terms.items():
            if mono_divides(m, n):
                k = mono_div(n, m)
                out[k] = out.get(k, zero) + c * a
    return DPElement(out, e.field)


def contraction_matrix(F: DPElement, d: int, nvars: int = 6):
    """Rows indexed by divided monomials of degree deg F - d, columns by
    monomials of degree d; column m is m o F."""
    field = F.field
    cols = monomials_of_degree(nvars, d)
    top = F.degree() - d
    rows_idx = monomials_of_degree(nvars, top) if top >= 0 else []
    pos = {m: i for i, m in enumerate(rows_idx)}
    rows = [[field.zero] * len(cols) for _ in rows_idx]
    for j, m in enumerate(cols):
        for n, c in contract(Poly.monomial(m, nvars, field), F).terms.items():
            rows[pos[n]][j] = c
    return rows, cols


def annihilator_dim(F: DPElement, d: int, nvars: int = 6) -> tuple[int, list[Poly]]:
    """dim (I_F)_d and a basis of it."""
    field = F.field
    if d > F.degree():
        mons = monomials_of_degree(nvars, d)
        return len(mons), [Poly.monomial(m, nvars, field) for m in mons]
    rows, cols = contraction_matrix(F, d, nvars)
    vecs, _ = linalg.kernel(field, rows, len(cols))
    basis = [Poly({cols[i]: c for i, c in enumerate(v)}, nvars, field) for v in vecs]
    return len(basis), basis


def apolar_hilbert_function(F: DPElement, maxdeg: int, nvars: int = 6) -> list[int]:
    return [count_monomials(nvars, d) - annihilator_dim(F, d, nvars)[0] for d in range(maxdeg + 1)]


@dataclass
class ApolarityEvidence:
    nonannihilating: list          # indices of generators g with g o F != 0
    hilbert_apolar: list           # HF of P/I_F in degrees 0..deg F + 1
    hilbert_quotient: list         # HF of P/I in the same degrees
    expected: tuple

    @property
    def ok(self) -> bool:
        return (not self.nonannihilating and tuple(self.hilbert_apolar) == self.expected
                and self.hilbert_quotient == self.hilbert_apolar)


def verify_apolarity(I: MarkedBasis, F: DPElement, expected=(1, 6, 6, 1, 0)) -> tuple[bool, ApolarityEvidence]:
    """I is contained in I_F and both quotients have Hilbert function ``expected``.

    Containment plus equal dimensions in every degree gives I = I_F, so P/I
    is Gorenstein with socle in degree deg F.
    """
    bad = [i for i, g in enumerate(I.polys) if not contract(g, F).is_zero()]
    top = len(expected) - 1
    hf_f = apolar_hilbert_function(F, top, I.nvars)
    hf_i = [quotient_dimension(I, d, F.field) for d in range(top + 1)]
    ev = ApolarityEvidence(bad, hf_f, hf_i, tuple(expected))
    return ev.ok, ev
