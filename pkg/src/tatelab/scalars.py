"""Exact scalars over the rationals or a prime field, and the parameter alpha.

Field elements are python-flint values: ``fmpq`` in rational mode and
``nmod`` in prime mode.  Both are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import flint


class ConfigError(ValueError):
    """Invalid field configuration (bad prime, bad alpha, out-of-range exponent)."""


class Field:
    """The coefficient field: ``Field(0)`` is Q, ``Field(p)`` is F_p."""

    def __init__(self, p: int = 0):
        if p and not flint.fmpz(p).is_prime():
            raise ConfigError(f"{p} is not prime")
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x) -> flint.fmpq | flint.nmod:
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, (flint.fmpq, flint.nmod)):
            if self.p:
                if isinstance(x, flint.nmod):
                    return flint.nmod(int(x), self.p)
                return flint.nmod(int(x.p), self.p) / flint.nmod(int(x.q), self.p)
            if isinstance(x, flint.nmod):
                raise TypeError("cannot lift a residue to the rationals")
            return x
        if isinstance(x, Fraction):
            if self.p:
                return flint.nmod(x.numerator, self.p) / flint.nmod(x.denominator, self.p)
            return flint.fmpq(x.numerator, x.denominator)
        if self.p:
            return flint.nmod(int(x), self.p)
        return flint.fmpq(int(x))

    def matrix(self, nrows: int, ncols: int, entries=None):
        """A flint matrix over this field (zero-filled if ``entries`` is None)."""
        if self.p:
            if entries is None:
                return flint.nmod_mat(nrows, ncols, self.p)
            return flint.nmod_mat(nrows, ncols, [int(e) for e in entries], self.p)
        if entries is None:
            return flint.fmpq_mat(nrows, ncols)
        return flint.fmpq_mat(nrows, ncols, list(entries))

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field({self.p})" if self.p else "Field(Q)"

    def to_str(self, x) -> str:
        """Rationals as ``a/b``; residues by their representative in (-p/2, p/2]."""
        if not self.p:
            return str(x)
        n = int(x)
        return str(n - self.p if n > self.p // 2 else n)


def arith(a, b, op: str):
    """Exact ``a <op> b`` for op in add/sub/mul/div; division by zero raises."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("division by zero in the coefficient field")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class FieldConfig:
    """Coefficient field plus the parameter alpha.

    In prime mode the multiplicative order of alpha must exceed
    ``2*range_bound + 4`` so that every alpha-power used by a computation
    within ``range_bound`` homological steps is distinct from the others.
    """

    p: int = 0
    alpha: Fraction = Fraction(2)
    range_bound: int = 16
    _field: Field = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.range_bound < 0:
            raise ConfigError("range_bound must be nonnegative")
        object.__setattr__(self, "_field", Field(self.p))
        a = self.alpha_scalar
        if a == 0 or a == 1:
            raise ConfigError(f"alpha = {self.alpha} is not allowed (must differ from 0 and 1)")
        if not self.p:
            if self.alpha == -1:
                raise ConfigError("alpha = -1 has finite multiplicative order")
            return
        x = a
        for e in range(1, 2 * self.range_bound + 5):
            if x == 1:
                raise ConfigError(
                    f"alpha = {self.alpha} has order {e} mod {self.p}, "
                    f"need more than {2 * self.range_bound + 4}")
            x = x * a

    @property
    def mode(self) -> str:
        return f"fp:{self.p}" if self.p else "q"

    @property
    def field(self) -> Field:
        return self._field

    @cached_property
    def alpha_scalar(self):
        return self._field(self.alpha)

    @classmethod
    def parse(cls, field_spec: str = "q", alpha: str = "2", range_bound: int = 16) -> "FieldConfig":
        """Build from CLI-style strings: ``q`` or ``fp:<p>``, and a rational literal."""
        try:
            a = Fraction(alpha)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad alpha literal {alpha!r}") from exc
        if field_spec in ("q", "Q", "rationals"):
            return cls(0, a, range_bound)
        if field_spec.startswith("fp:"):
            try:
                p = int(field_spec[3:])
            except ValueError as exc:
                raise ConfigError(f"bad prime in {field_spec!r}") from exc
            if p < 2:
                raise ConfigError(f"{p} is not prime")
            return cls(p, a, range_bound)
        raise ConfigError(f"unknown field {field_spec!r}; use 'q' or 'fp:<p>'")

    def describe(self) -> dict:
        return {"mode": self.mode, "alpha": str(self.alpha), "range_bound": self.range_bound}


def alpha_power(cfg: FieldConfig, i: int):
    """The coefficient alpha**(1 - i) of x in the differential d_i."""
    e = 1 - i
    if cfg.p and abs(e) > cfg.range_bound + 2:
        raise ConfigError(
            f"exponent {e} exceeds the order guarantee of alpha for range_bound={cfg.range_bound}")
    a = cfg.alpha_scalar
    if e >= 0:
        return a ** e
    return cfg.field.one / a ** (-e)
