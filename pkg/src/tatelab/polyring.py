"""Polynomials over the coefficient field, graded reverse-lex orders, normal forms
and Hilbert-function comparisons.

A monomial is a plain tuple of exponents, one per variable.  A ``Poly`` is a
mapping monomial -> nonzero coefficient.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb

from . import linalg
from .scalars import ConfigError, FieldConfig

Monomial = tuple


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse-lexicographic order.

    ``precedence`` lists variable indices from largest to smallest, so
    ``Z>U>Y>X>T>V`` on variables (T,U,V,X,Y,Z) is ``(5, 1, 4, 3, 0, 2)``.
    """

    precedence: tuple

    def key(self, m: Monomial):
        return (sum(m), tuple(-m[v] for v in reversed(self.precedence)))

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)


class Poly:
    """Sparse polynomial with coefficients in a fixed field."""

    __slots__ = ("terms", "nvars", "field")

    def __init__(self, terms: dict, nvars: int, field):
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self.nvars = nvars
        self.field = field

    @classmethod
    def constant(cls, c, nvars, field):
        return cls({(0,) * nvars: field(c)}, nvars, field)

    @classmethod
    def variable(cls, i, nvars, field):
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): field.one}, nvars, field)

    @classmethod
    def monomial(cls, m, nvars, field, c=None):
        return cls({tuple(m): field.one if c is None else c}, nvars, field)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def degree(self) -> int:
        return max(sum(m) for m in self.terms) if self.terms else -1

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.constant(other, self.nvars, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, self.field.zero) + c
        return Poly(t, self.nvars, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, self.nvars, self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        t = {}
        zero = self.field.zero
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                t[m] = t.get(m, zero) + c1 * c2
        return Poly(t, self.nvars, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.constant(1, self.nvars, self.field)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c):
        return Poly({m: c * v for m, v in self.terms.items()}, self.nvars, self.field)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = self._coerce(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_str(self, names, order: MonomialOrder | None = None) -> str:
        if not self.terms:
            return "0"
        ms = list(self.terms)
        if order is not None:
            ms.sort(key=order.key, reverse=True)
        parts = []
        for m in ms:
            c = self.terms[m]
            mon = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.to_str([f'x{i}' for i in range(self.nvars)])})"


def leading_term(f: Poly, order: MonomialOrder) -> Monomial:
    if f.is_zero():
        raise ValueError("the zero polynomial has no leading term")
    return max(f.terms, key=order.key)


# -- parsing ---------------------------------------------------------------

class _Evaluator(ast.NodeVisitor):
    def __init__(self, names, field, constants):
        self.index = {n: i for i, n in enumerate(names)}
        self.nvars = len(names)
        self.field = field
        self.constants = constants

    def visit_Expression(self, node):
        return self.visit(node.body)

    def visit_BinOp(self, node):
        if isinstance(node.op, ast.Pow):
            e = node.right
            if not (isinstance(e, ast.Constant) and isinstance(e.value, int) and e.value >= 0):
                raise ValueError("exponent must be a nonnegative integer literal")
            return self.visit(node.left) ** e.value
        a = self.visit(node.left)
        b = self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if len(b.terms) != 1 or (0,) * self.nvars not in b.terms:
                raise ValueError("can only divide by a nonzero constant")
            return a.scale(self.field.one / b.terms[(0,) * self.nvars])
        raise ValueError(f"unsupported operator {type(node.op).__name__}")

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        raise ValueError("unsupported unary operator")

    def visit_Constant(self, node):
        if not isinstance(node.value, int) or isinstance(node.value, bool):
            raise ValueError(f"unsupported literal {node.value!r}")
        return Poly.constant(node.value, self.nvars, self.field)

    def visit_Name(self, node):
        if node.id in self.index:
            return Poly.variable(self.index[node.id], self.nvars, self.field)
        if node.id in self.constants:
            return Poly.constant(self.constants[node.id], self.nvars, self.field)
        raise ValueError(f"unknown symbol {node.id!r}")

    def generic_visit(self, node):
        raise ValueError(f"unsupported syntax: {type(node).__name__}")


def _leftmost_term(node):
    while isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub)):
        node = node.left
    return node


def parse_poly(text: str, names, cfg: FieldConfig, first_term: bool = False):
    """Parse a polynomial expression; ``^`` and ``**`` both mean power and the
    symbol ``alpha`` resolves to ``cfg.alpha``.

    With ``first_term=True`` also return the leftmost summand as written.
    """
    tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    ev = _Evaluator(list(names), cfg.field, {"alpha": cfg.alpha_scalar})
    f = ev.visit(tree)
    if not first_term:
        return f
    return f, ev.visit(_leftmost_term(tree.body))


# -- marked bases ----------------------------------------------------------

@dataclass
class MarkedBasis:
    """Generators with marked leading monomials."""

    polys: list
    marks: list
    order: MonomialOrder
    nvars: int

    def __post_init__(self):
        for f, m in zip(self.polys, self.marks):
            lt = leading_term(f, self.order)
            if lt != m:
                raise ValueError(f"marked monomial {m} is not the leading term {lt}")

    @classmethod
    def from_polys(cls, polys, order, nvars):
        return cls(list(polys), [leading_term(f, order) for f in polys], order, nvars)

    def is_monomial(self) -> bool:
        return all(len(f.terms) == 1 for f in self.polys)

    def initial_ideal(self) -> "MarkedBasis":
        """The monomial basis formed by the marked leading terms."""
        field = self.polys[0].field if self.polys else None
        polys = [Poly.monomial(m, self.nvars, field) for m in self.marks]
        return MarkedBasis(polys, list(self.marks), self.order, self.nvars)

    def without(self, i: int) -> "MarkedBasis":
        return MarkedBasis(self.polys[:i] + self.polys[i + 1:], self.marks[:i] + self.marks[i + 1:],
                           self.order, self.nvars)

    def __len__(self):
        return len(self.polys)


def normal_form(f: Poly, G: MarkedBasis) -> Poly:
    """Fully reduce ``f`` modulo ``G``, always rewriting the largest reducible term."""
    order = G.order
    terms = dict(f.terms)
    field = f.field
    lead_coeff = [g.terms[m] for g, m in zip(G.polys, G.marks)]
    while True:
        target = None
        for m in sorted(terms, key=order.key, reverse=True):
            for gi, lead in enumerate(G.marks):
                if mono_divides(lead, m):
                    target = (m, gi)
                    break
            if target:
                break
        if target is None:
            return Poly(terms, f.nvars, field)
        m, gi = target
        c = terms[m] / lead_coeff[gi]
        shift = mono_div(m, G.marks[gi])
        for gm, gc in G.polys[gi].terms.items():
            mm = mono_mul(gm, shift)
            v = terms.get(mm, field.zero) - c * gc
            if v == 0:
                terms.pop(mm, None)
            else:
                terms[mm] = v


def standard_monomials(J: MarkedBasis, d: int) -> list[Monomial]:
    """Degree-d monomials divisible by no marked monomial of J."""
    return [m for m in monomials_of_degree(J.nvars, d)
            if not any(mono_divides(lead, m) for lead in J.marks)]


def hilbert_function_monomial_quotient(J: MarkedBasis, maxdeg: int) -> list[int]:
    """Hilbert function of P/J for a monomial ideal J, degrees 0..maxdeg."""
    if not J.is_monomial():
        raise ValueError("hilbert_function_monomial_quotient needs monomial generators")
    return [len(standard_monomials(J, d)) for d in range(maxdeg + 1)]


def quotient_dimension(I: MarkedBasis, d: int, field) -> int:
    """dim_k (P/I)_d, by row-reducing all degree-d multiples of the generators."""
    mons = monomials_of_degree(I.nvars, d)
    pos = {m: i for i, m in enumerate(mons)}
    rows = []
    for g in I.polys:
        gd = g.degree()
        if not g.is_homogeneous():
            raise ValueError("quotient_dimension needs homogeneous generators")
        if gd > d:
            continue
        for s in monomials_of_degree(I.nvars, d - gd):
            row = [field.zero] * len(mons)
            for m, c in g.terms.items():
                row[pos[mono_mul(m, s)]] = c
            rows.append(row)
    return len(mons) - linalg.rank(field, rows, len(mons))


@dataclass
class GroebnerEvidence:
    standard_counts: list
    quotient_dims: list
    first_mismatch: int | None

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None


def groebner_check_by_hilbert(I: MarkedBasis, maxdeg: int, field) -> GroebnerEvidence:
    """Compare, degree by degree, the number of standard monomials with respect to
    the marks against dim (P/I)_d computed by linear algebra.  Equality for all
    degrees up to the point where both vanish certifies that the marks generate
    the initial ideal."""
    std, quo = [], []
    bad = None
    for d in range(maxdeg + 1):
        s = len(standard_monomials(I, d))
        q = quotient_dimension(I, d, field)
        std.append(s)
        quo.append(q)
        if s != q and bad is None:
            bad = d
    return GroebnerEvidence(std, quo, bad)


# -- presentations ---------------------------------------------------------

@dataclass
class QuotientPresentation:
    """P/I with P = k[names] under a graded revlex order."""

    names: tuple
    order: MonomialOrder
    basis: MarkedBasis
    cfg: FieldConfig
    relation_text: list = field(default_factory=list)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def parse(self, text: str) -> Poly:
        return parse_poly(text, self.names, self.cfg)


def parse_presentation(text: str, cfg: FieldConfig) -> QuotientPresentation:
    """Read the ring format::

        vars: T U V X Y Z
        order: grevlex Z>U>Y>X>T>V
        rel: U*Z - T*X - alpha*U*V

    The first written monomial of each relation is taken as its mark and must
    be its leading term under the order.
    """
    names = None
    order = None
    rels = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, val = line.partition(":")
        key, val = key.strip().lower(), val.strip()
        if key == "vars":
            names = tuple(val.split())
        elif key == "order":
            kind, _, prec = val.partition(" ")
            if kind.lower() != "grevlex":
                raise ValueError(f"unsupported order {kind!r}")
            if names is None:
                raise ValueError("'vars:' must precede 'order:'")
            prec_names = [s.strip() for s in prec.split(">")]
            if sorted(prec_names) != sorted(names):
                raise ValueError("order must rank every variable exactly once")
            order = MonomialOrder(tuple(names.index(n) for n in prec_names))
        elif key == "rel":
            rels.append(val)
        else:
            raise ValueError(f"unknown line {raw!r}")
    if names is None:
        raise ValueError("missing 'vars:' line")
    if order is None:
        order = MonomialOrder(tuple(range(len(names))))
    polys, marks = [], []
    for r in rels:
        f, first = parse_poly(r, names, cfg, first_term=True)
        if f.is_zero():
            raise ValueError(f"relation {r!r} is zero")
        if len(first.terms) != 1:
            raise ValueError(f"could not read the first monomial of {r!r}")
        polys.append(f)
        marks.append(next(iter(first.terms)))
    return QuotientPresentation(names, order, MarkedBasis(polys, marks, order, len(names)), cfg, rels)


PRESETS = {
    "codim6-gorenstein": """\
vars: T U V X Y Z
order: grevlex Z>U>Y>X>T>V
rel: Z^2
rel: U*Z - T*X - alpha*U*V
rel: U^2
rel: Y*Z + V*Y
rel: U*Y
rel: Y^2 - T*X - (alpha-1)*U*V
rel: X*Z + alpha*V*X
rel: U*X
rel: X*Y
rel: X^2 - T*X - T*V
rel: T*Z + T*Y + alpha*V*X
rel: T*U
rel: T*Y - V*X + T*V
rel: T^2 + (alpha+1)*U*V - V*Y
rel: V^2
""",
}


def preset_presentation(name: str, cfg: FieldConfig) -> QuotientPresentation:
    try:
        text = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown ring preset {name!r}; known: {sorted(PRESETS)}") from None
    return parse_presentation(text, cfg)


def count_monomials(nvars: int, d: int) -> int:
    return comb(nvars + d - 1, d)
