"""The verification suite.

Every check returns a CheckResult holding the computed value, the expected
value and a short anchor naming the claim being checked.  Checks never raise:
a computation that runs past the resource budget is a failure whose
``actual`` records what was computed before the limit and why it stopped.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

from . import __version__
from .algebra import AlgebraError, GroebnerError, is_gorenstein, preset_ring, socle
from .homalg import (HomalgError, ResourceLimitError, bass_numbers,
                     betti_numbers, build_complete_resolution_C, ext, fib_lower_bound,
                     matlis_dual, preset_module, r_dual, random_length2_module, tate_ext,
                     tate_tor, tor)
from .invsys import DEFAULT_FORM, apolar_form, contract, verify_apolarity
from .polyring import groebner_check_by_hilbert, hilbert_function_monomial_quotient, parse_poly
from .scalars import ConfigError, FieldConfig

SUITES = ("ring", "complex", "homology", "auslander", "invsys")


@dataclass
class CheckResult:
    id: str
    status: str                 # "pass" | "fail" | "skipped"
    expected: object
    actual: object
    anchor: str
    runtime_ms: int | None = None

    def as_dict(self) -> dict:
        return {"id": self.id, "status": self.status, "expected": self.expected,
                "actual": self.actual, "anchor": self.anchor, "runtime_ms": self.runtime_ms}


@dataclass(frozen=True)
class Ranges:
    """How far each family of checks reaches."""

    neg: int = 8            # exactness of C and negative Tate spots down to -neg
    pos: int = 3            # exactness of C up to spot pos
    depth: int = 8          # positive Tate spots 1..depth; ranks C_2..C_depth
    ext_depth: int = 6      # ext(N, M, i) for 1 <= i <= ext_depth
    consistency: int = 5    # Tate-vs-Tor and Matlis pairing up to this index
    k_depth: int = 4        # resolution of the residue field
    bass_depth: int = 4
    qs: tuple = (1, 2, 3)
    samples: int = 20
    sample_depth: int = 4
    seed: int = 0


@dataclass
class Report:
    field: dict
    checks: list = field(default_factory=list)
    tool: str = "tatelab"
    version: str = __version__

    @property
    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def sorted_checks(self) -> list[CheckResult]:
        return sorted(self.checks, key=lambda c: c.id)

    def as_dict(self) -> dict:
        return {"tool": self.tool, "version": self.version, "field": self.field,
                "checks": [c.as_dict() for c in self.sorted_checks()],
                "summary": self.summary}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"


def emit_json(report: Report, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report.to_json())


class _Partial(Exception):
    """Partial results of a check body that hit the resource budget."""

    def __init__(self, actual, reason: str):
        super().__init__(reason)
        self.actual = actual
        self.reason = reason


_EXPECTED_ERRORS = (HomalgError, AlgebraError, GroebnerError, ConfigError, ValueError)


def _run(cid: str, anchor: str, expected, body: Callable, timings: bool) -> CheckResult:
    """``body()`` returns (passed, actual)."""
    t = time.perf_counter()
    try:
        ok, actual = body()
        status = "pass" if ok else "fail"
    except _Partial as exc:
        status, actual = "fail", {"computed": exc.actual, "limit": exc.reason}
    except _EXPECTED_ERRORS as exc:
        status, actual = "fail", {"error": f"{type(exc).__name__}: {exc}"}
    ms = round((time.perf_counter() - t) * 1000) if timings else None
    return CheckResult(cid, status, expected, actual, anchor, ms)


def _collect(fn: Callable, keys) -> dict:
    """{str(key): fn(key)} in order; on a resource limit, raise _Partial with
    the values computed so far."""
    out = {}
    for key in keys:
        try:
            out[str(key)] = fn(key)
        except ResourceLimitError as exc:
            raise _Partial(out, str(exc)) from None
    return out


# -- power-series oracles --------------------------------------------------

def series_inverse(den: list[int], n: int) -> list[int]:
    """Coefficients 0..n of 1 / den(t), den[0] = 1."""
    c: list[int] = []
    for i in range(n + 1):
        s = 1 if i == 0 else 0
        s -= sum(den[k] * c[i - k] for k in range(1, min(i, len(den) - 1) + 1))
        c.append(s)
    return c


def koszul_betti(hilbert: list[int], n: int) -> list[int]:
    """beta_0..beta_n of k over a Koszul algebra: P_k(t) = 1 / H_R(-t)."""
    return series_inverse([h * (-1) ** i for i, h in enumerate(hilbert)], n)


# -- ring -------------------------------------------------------------------

BASIS_NAMES = ["1", "t", "u", "v", "x", "y", "z", "tv", "tx", "uv", "vx", "vy", "vz", "tvx"]
DEGREE_ONE = ["t", "u", "v", "x", "y", "z"]
DEGREE_TWO = ["tv", "tx", "uv", "vx", "vy", "vz"]
# nonzero products (degree one) x (degree two), as multiples of s = tvx
NONZERO_PRODUCTS = {"x*tv": "1", "u*vz": "1", "v*tx": "1", "y*vy": "1",
                    "z*uv": "1", "z*tx": "-alpha", "x*vx": "1", "t*vx": "1"}


def expected_table(cfg: FieldConfig) -> dict:
    out = {}
    for a in DEGREE_ONE:
        for b in DEGREE_TWO:
            c = NONZERO_PRODUCTS.get(f"{a}*{b}", "0")
            out[f"{a}*{b}"] = cfg.field.to_str(-cfg.alpha_scalar) if c == "-alpha" else c
    return out


def multiplication_table(A) -> dict:
    """Each product (degree one) x (degree two) as a multiple of s."""
    s_idx = A.dim - 1
    by_name = {A.basis_name(i): A.basis_element(i) for i in range(A.dim)}
    out = {}
    for a in DEGREE_ONE:
        for b in DEGREE_TWO:
            prod = by_name[a] * by_name[b]
            c = prod.coeffs[s_idx]
            out[f"{a}*{b}"] = A.field.to_str(c) if prod == A.basis_element(s_idx) * c else "not in ks"
    return out


def ring_checks(cfg: FieldConfig, timings: bool = False) -> list[CheckResult]:
    A = preset_ring(cfg)
    out = []

    def basis():
        names = [A.basis_name(i) for i in range(A.dim)]
        act = {"basis": names, "hilbert": A.hilbert_function()}
        return names == BASIS_NAMES and act["hilbert"] == [1, 6, 6, 1], act

    out.append(_run("ring.01.basis", "k-basis of R; H_R(t) = 1 + 6t + 6t^2 + t^3",
                    {"basis": BASIS_NAMES, "hilbert": [1, 6, 6, 1]}, basis, timings))

    table_exp = expected_table(cfg)

    def table():
        act = multiplication_table(A)
        return act == table_exp, act

    out.append(_run("ring.02.table", "multiplication m_1 x m_2 -> k tvx", table_exp, table, timings))

    def assoc():
        bad = A.associativity_failures()
        ok = not bad and A.check_commutative() and A.check_degrees()
        return ok, {"failures": len(bad), "triples": A.dim ** 3}

    out.append(_run("ring.03.associativity", "structure constants: associative, commutative, graded",
                    {"failures": 0, "triples": 14 ** 3}, assoc, timings))

    def soc():
        names = ["+".join(A.basis_name(i) for i, c in enumerate(v) if c != 0) for v in socle(A)]
        act = {"socle": names, "gorenstein": is_gorenstein(A), "m4_zero": A.power_of_max_ideal_vanishes(4)}
        return act == {"socle": ["tvx"], "gorenstein": True, "m4_zero": True}, act

    out.append(_run("ring.04.socle", "Socle(R) = (tvx); R Gorenstein; m^4 = 0",
                    {"socle": ["tvx"], "gorenstein": True, "m4_zero": True}, soc, timings))

    def initial():
        basis = A.presentation.basis
        hf = hilbert_function_monomial_quotient(basis.initial_ideal(), 4)
        ev = groebner_check_by_hilbert(basis, 4, A.field)
        act = {"initial_ideal": hf, "quotient": ev.quotient_dims, "gb": ev.ok}
        return hf == [1, 6, 6, 1, 0] and ev.ok, act

    out.append(_run("ring.05.initial_ideal", "H(P/J) = (1, 6, 6, 1, 0) for the initial ideal J",
                    {"initial_ideal": [1, 6, 6, 1, 0], "quotient": [1, 6, 6, 1, 0], "gb": True},
                    initial, timings))
    return out


# -- inverse system -----------------------------------------------------------

def invsys_checks(cfg: FieldConfig, timings: bool = False, form: str = DEFAULT_FORM) -> list[CheckResult]:
    out = []
    expected = {"nonannihilating": [], "hilbert": [1, 6, 6, 1, 0]}

    def apolarity():
        A = preset_ring(cfg)
        F = apolar_form(cfg, form)
        ok, ev = verify_apolarity(A.presentation.basis, F)
        return ok, {"nonannihilating": ev.nonannihilating, "hilbert": ev.hilbert_apolar,
                    "quotient": ev.hilbert_quotient}

    out.append(_run("invsys.01.apolarity", "I = Ann(F): generators annihilate F and H(P/I_F) = (1, 6, 6, 1)",
                    dict(expected, quotient=[1, 6, 6, 1, 0]), apolarity, timings))

    def socle_value():
        A = preset_ring(cfg)
        F = apolar_form(cfg, form)
        tvx = parse_poly("T*V*X", A.names, cfg)
        val = contract(tvx, F)
        names = ["+".join(A.basis_name(i) for i, c in enumerate(v) if c != 0) for v in socle(A)]
        act = {"tvx_contracts_to_nonzero": not val.is_zero(), "socle": names}
        return act == {"tvx_contracts_to_nonzero": True, "socle": ["tvx"]}, act

    out.append(_run("invsys.02.socle_agreement", "s = tvx is nonzero in R and spans the socle",
                    {"tvx_contracts_to_nonzero": True, "socle": ["tvx"]}, socle_value, timings))
    return out


# -- the complex C ------------------------------------------------------------

def complex_checks(cfg: FieldConfig, r: Ranges = Ranges(), timings: bool = False) -> list[CheckResult]:
    out = []
    neg, pos = r.neg, r.pos

    def build():
        return build_complete_resolution_C(neg + 1, pos + 1, cfg)

    def d_squared():
        C = build()
        bad = C.check_d_squared()
        return not bad, {"nonzero_compositions": bad, "range": [C.lo, C.hi]}

    out.append(_run("complex.01.d_squared", "d_i d_(i+1) = 0 and all entries in m",
                    {"nonzero_compositions": [], "range": [-neg - 1, pos + 1]}, d_squared, timings))

    spots = list(range(-neg, pos + 1))

    def exact():
        C = build()
        act = {str(i): C.homology_dim(i) for i in spots}
        return all(v == 0 for v in act.values()), act

    out.append(_run("complex.02.exact", "H_i(C) = 0", {str(i): 0 for i in spots}, exact, timings))

    low = list(range(-neg, 1))

    def images():
        C = build()
        act = {"image": {str(i): C.image_dim(i) for i in low},
               "rank": {str(i): C.modules[i].rank for i in low}}
        return all(v == 14 for v in act["image"].values()) and all(v == 2 for v in act["rank"].values()), act

    out.append(_run("complex.03.nonpositive_part", "rank C_i = 2 and dim Im d_i = 14 for i <= 0",
                    {"image": {str(i): 14 for i in low}, "rank": {str(i): 2 for i in low}}, images, timings))

    mirrored = [-i for i in reversed(spots)]

    def dual_exact():
        D = build().dualize()
        act = {str(i): D.homology_dim(i) for i in mirrored}
        return all(v == 0 for v in act.values()), act

    out.append(_run("complex.04.dual_exact", "Hom_R(C, R) exact", {str(i): 0 for i in mirrored},
                    dual_exact, timings))

    idx = list(range(0, r.depth - 1))
    fib = {str(i + 2): fib_lower_bound(i) for i in idx}

    def growth():
        vals = _collect(lambda n: build_complete_resolution_C(0, n, cfg).modules[n].rank,
                        [i + 2 for i in idx])
        seq = list(vals.values())
        ok = (all(vals[k] >= fib[k] for k in vals) and all(a < b for a, b in zip(seq, seq[1:])))
        return ok, {"rank": vals}

    out.append(_run("complex.05.growth", "rank C_(i+2) >= coefficient of t^i in (2+t)/(1-t-t^2), increasing",
                    {"rank_at_least": fib, "strictly_increasing": True}, growth, timings))
    return out


# -- homology ---------------------------------------------------------------

def _all(values: dict, pred) -> bool:
    return all(pred(v) for v in values.values())


def homology_checks(cfg: FieldConfig, r: Ranges = Ranges(), timings: bool = False) -> list[CheckResult]:
    out = []
    A = preset_ring(cfg)
    M = preset_module("M", cfg)
    N = preset_module("N", cfg)
    k = preset_module("k", cfg)

    beta_k = koszul_betti(A.hilbert_function(), r.k_depth)

    def koszul():
        bt = betti_numbers(k, r.k_depth)
        act = {"betti": bt.totals, "linear": bt.is_linear()}
        return act == {"betti": beta_k, "linear": True}, act

    out.append(_run("homology.01.koszul", "k has a linear resolution; P_k(t) = 1 / H_R(-t)",
                    {"betti": beta_k, "linear": True}, koszul, timings))

    pos_spots = list(range(1, r.depth + 1))
    neg_spots = list(range(-1, -r.neg - 1, -1))
    zero = {str(i): 0 for i in pos_spots}
    positive = {str(i): "> 0" for i in neg_spots}

    def tate_ext_pos():
        vals = _collect(lambda i: tate_ext(M, N, i), pos_spots)
        return _all(vals, lambda v: v == 0), vals

    out.append(_run("homology.02.tate_ext_positive", "Tate Ext^i(M, N) = 0 for i > 0", zero,
                    tate_ext_pos, timings))

    def tate_ext_neg():
        vals = _collect(lambda i: tate_ext(M, N, i), neg_spots)
        return _all(vals, lambda v: v > 0), vals

    out.append(_run("homology.03.tate_ext_negative", "Tate Ext^i(M, N) != 0 for i < 0", positive,
                    tate_ext_neg, timings))

    ext_spots = list(range(1, r.ext_depth + 1))

    def ext_nm():
        vals = _collect(lambda i: ext(N, M, i, method="coresolve"), ext_spots)
        return _all(vals, lambda v: v > 0), vals

    out.append(_run("homology.04.ext_N_M", "Ext^i(N, M) != 0 for i > 0",
                    {str(i): "> 0" for i in ext_spots}, ext_nm, timings))

    def tate_tor_pos():
        vals = _collect(lambda i: tate_tor(M, N, i), pos_spots)
        return _all(vals, lambda v: v == 0), vals

    out.append(_run("homology.05.tate_tor_positive", "Tate Tor_i(M, N) = 0 for i > 0", zero,
                    tate_tor_pos, timings))

    def tate_tor_neg():
        vals = _collect(lambda i: tate_tor(M, N, i), neg_spots)
        return _all(vals, lambda v: v > 0), vals

    out.append(_run("homology.06.tate_tor_negative", "Tate Tor_i(M, N) != 0 for i < 0", positive,
                    tate_tor_neg, timings))

    cons = list(range(1, r.consistency + 1))

    def tate_vs_tor():
        Ms = r_dual(M)
        vals = _collect(lambda i: [tate_ext(M, N, -i - 1), tor(Ms, N, i)], cons)
        return _all(vals, lambda v: v[0] == v[1]), vals

    out.append(_run("homology.07.tate_vs_tor", "Tate Ext^(-i-1)(M, N) = Tor_i(M*, N)",
                    "equal pairs", tate_vs_tor, timings))

    pair_spots = list(range(0, r.consistency + 1))

    def matlis_pairing():
        Mv = matlis_dual(M)
        vals = _collect(lambda i: [tor(N, Mv, i, side="second"), ext(N, M, i, method="coresolve")],
                        pair_spots)
        return _all(vals, lambda v: v[0] == v[1]), vals

    out.append(_run("homology.08.matlis_pairing", "dim Tor_i(N, M^v) = dim Ext^i(N, M)",
                    "equal pairs", matlis_pairing, timings))

    def length_two():
        rows = {}
        ok = True
        # resolving E once serves every sample; resolving each L (or L^v) costs 8x more
        E = preset_module("E", cfg)
        for s in range(r.seed, r.seed + r.samples):
            L = random_length2_module(s, cfg)
            try:
                row = {"module": L.name,
                       "ext": [ext(E, L, i) for i in range(1, r.sample_depth + 1)],
                       "tor": [tor(E, L, i) for i in range(1, r.sample_depth + 1)]}
            except ResourceLimitError as exc:
                raise _Partial(rows, str(exc)) from None
            rows[str(s)] = row
            ok = ok and all(v > 0 for v in row["ext"] + row["tor"])
        return ok, rows

    out.append(_run("homology.09.length_two", "Ext^i(E, L) != 0 and Tor_i(E, L) != 0 for length-two L",
                    "all entries > 0", length_two, timings))

    def bass():
        vals = {}
        for name in ("N", "cokerd1", "M"):
            X = preset_module(name, cfg)
            try:
                mu = bass_numbers(X, r.bass_depth, method="matlis")
                mu_ext = bass_numbers(X, r.bass_depth, method="ext")
            except ResourceLimitError as exc:
                raise _Partial(vals, str(exc)) from None
            vals[name] = {"bass": mu, "bass_via_ext": mu_ext,
                          "betti_of_dual": betti_numbers(r_dual(X), r.bass_depth).totals}
        ok = all(v["bass"] == v["bass_via_ext"] == v["betti_of_dual"] for v in vals.values())
        return ok, vals

    out.append(_run("homology.10.bass_betti", "mu^i(X) = beta_i(Hom_R(X, R))", "equal sequences",
                    bass, timings))
    return out


# -- Auslander pattern ----------------------------------------------------------

def auslander_pattern(cfg: FieldConfig, q: int) -> dict:
    """{i: dim Ext^i(M, N_q)} for 0 <= i <= q + 4."""
    M = preset_module("M", cfg)
    Nq = preset_module("Nq", cfg, q)
    return _collect(lambda i: ext(M, Nq, i), range(0, q + 5))


def auslander_checks(cfg: FieldConfig, r: Ranges = Ranges(), timings: bool = False) -> list[CheckResult]:
    out = []
    for q in r.qs:
        expected = {str(i): ("> 0" if i in (0, q - 1, q) else 0) for i in range(q + 5)}

        def body(q=q):
            vals = auslander_pattern(cfg, q)
            ok = all((v > 0) == (int(i) in (0, q - 1, q)) for i, v in vals.items())
            return ok, vals

        out.append(_run(f"auslander.q{q}", f"Ext^i(M, N_{q}) = 0 iff i not in {{0, {q - 1}, {q}}}",
                        expected, body, timings))
    return out


# -- suites -----------------------------------------------------------------

def run_suite(suite: str, cfg: FieldConfig, ranges: Ranges = Ranges(), timings: bool = False,
              form: str = DEFAULT_FORM) -> Report:
    if suite not in SUITES + ("all",):
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    names = SUITES if suite == "all" else (suite,)
    report = Report(cfg.describe())
    for name in names:
        if name == "ring":
            report.checks += ring_checks(cfg, timings)
        elif name == "invsys":
            report.checks += invsys_checks(cfg, timings, form)
        elif name == "complex":
            report.checks += complex_checks(cfg, ranges, timings)
        elif name == "homology":
            report.checks += homology_checks(cfg, ranges, timings)
        elif name == "auslander":
            report.checks += auslander_checks(cfg, ranges, timings)
    return report


def config_failure(exc: Exception, field_spec: dict | None = None) -> Report:
    report = Report(field_spec or {})
    report.checks.append(CheckResult("config", "fail", "a valid configuration",
                                     {"error": str(exc)}, "validation of field, alpha and input files"))
    return report
