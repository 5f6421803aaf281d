"""Ext, Tor, Tate (co)homology, Betti and Bass numbers.

Every homology dimension is a sum over internal degrees: all maps are
homogeneous, so Hom(F, Y) and F (x) Y split into finite graded pieces and
ranks are taken piece by piece.
"""

from __future__ import annotations

from .. import linalg
from .free import Complex, FreeModule, HomalgError, RMatrix
from .modules import FpModule
from .resolve import Resolution, min_free_resolution


class ConsistencyError(HomalgError):
    """Two independent computations of the same number disagree."""


def resolve(X: FpModule, n: int) -> Resolution:
    return min_free_resolution(X, n)


# -- graded pieces of Hom(d, Y) and d (x) Y ------------------------------------

def _slots(F: FreeModule, Y: FpModule, sign: int) -> dict[int, list[tuple[int, int]]]:
    """Group the pairs (generator g, basis j of Y) by the degree
    deg y_j - twist_g (Hom, sign=+1) or deg y_j + twist_g (tensor, sign=-1)."""
    out: dict[int, list] = {}
    for g, a in enumerate(F.twists):
        for j, dj in enumerate(Y.degrees):
            key = dj - a if sign > 0 else dj + a
            out.setdefault(key, []).append((g, j))
    return out


def _apply_entry(Y: FpModule, r: dict, j: int) -> dict:
    """r * y_j for a ring element r = {basis index: coef}."""
    acts = Y.basis_actions()
    out: dict = {}
    for b, c in r.items():
        for i, v in acts[b][j].items():
            w = out.get(i)
            out[i] = c * v if w is None else w + c * v
    return {i: v for i, v in out.items() if v != 0}


def _rank_hom(d: RMatrix, Y: FpModule) -> int:
    """k-rank of Hom(d, Y): Hom(target, Y) -> Hom(source, Y)."""
    field = Y.field
    cols_by = _slots(d.target, Y, +1)
    rows_by = _slots(d.source, Y, +1)
    by_row: dict[int, list] = {}
    for g in range(d.source.rank):
        for h, r in d.entries_by_column(g).items():
            by_row.setdefault(h, []).append((g, r))
    total = 0
    for e, cols in cols_by.items():
        rows = rows_by.get(e)
        if not rows:
            continue
        rpos = {gi: k for k, gi in enumerate(rows)}
        # psi in Hom(target, Y) sends e_h -> y_j; its pullback sends e_g -> r_hg y_j
        colvecs = []
        for h, j in cols:
            vec = {}
            colvecs.append(vec)
            for g, r in by_row.get(h, ()):
                for i, v in _apply_entry(Y, r, j).items():
                    vec[rpos[(g, i)]] = v
        total += _rank_of_columns(field, colvecs, len(rows))
    return total


def _rank_tensor(d: RMatrix, Y: FpModule) -> int:
    """k-rank of d (x) Y: source (x) Y -> target (x) Y."""
    field = Y.field
    cols_by = _slots(d.source, Y, -1)
    rows_by = _slots(d.target, Y, -1)
    entries = [d.entries_by_column(g) for g in range(d.source.rank)]
    total = 0
    for D, cols in cols_by.items():
        rows = rows_by.get(D)
        if not rows:
            continue
        rpos = {gi: k for k, gi in enumerate(rows)}
        colvecs = []
        for g, j in cols:
            vec = {}
            colvecs.append(vec)
            for h, r in entries[g].items():
                for i, v in _apply_entry(Y, r, j).items():
                    w = vec.get(rpos[(h, i)])
                    vec[rpos[(h, i)]] = v if w is None else w + v
        total += _rank_of_columns(field, colvecs, len(rows))
    return total


def _rank_of_columns(field, colvecs: list[dict], nrows: int) -> int:
    cols = sorted(({i: v for i, v in c.items() if v != 0} for c in colvecs), key=len)
    return len(linalg.sparse_pivots(field, cols, nrows))


def hom_homology(C: Complex, Y: FpModule, i: int) -> int:
    """dim_k of the homology of Hom(C, Y) at Hom(C_i, Y)."""
    dim = C.modules[i].rank * Y.dim
    if i in C.maps:
        dim -= _rank_hom(C.maps[i], Y)
    elif i != C.lo:
        raise HomalgError(f"d_{i} missing")
    if i + 1 in C.maps:
        dim -= _rank_hom(C.maps[i + 1], Y)
    elif i != C.hi:
        raise HomalgError(f"d_{i + 1} missing")
    return dim


def tensor_homology(C: Complex, Y: FpModule, i: int) -> int:
    """dim_k H_i(C (x) Y)."""
    dim = C.modules[i].rank * Y.dim
    if i in C.maps:
        dim -= _rank_tensor(C.maps[i], Y)
    elif i != C.lo:
        raise HomalgError(f"d_{i} missing")
    if i + 1 in C.maps:
        dim -= _rank_tensor(C.maps[i + 1], Y)
    elif i != C.hi:
        raise HomalgError(f"d_{i + 1} missing")
    return dim


# -- dual modules (cached) ----------------------------------------------------

def r_dual(X: FpModule) -> FpModule:
    D = getattr(X, "_rdual", None)
    if D is None:
        D = X.r_dual()
        X._rdual = D
    return D


def matlis_dual(X: FpModule) -> FpModule:
    D = getattr(X, "_mdual", None)
    if D is None:
        D = X.matlis_dual()
        X._mdual = D
    return D


# -- Ext and Tor ----------------------------------------------------------------

def ext(X: FpModule, Y: FpModule, i: int, method: str = "resolve") -> int:
    """dim_k Ext^i_R(X, Y).

    ``resolve``: H^i Hom(F, Y) for the minimal resolution F of X.
    ``coresolve``: the injective resolution of Y is Hom(G, R) for a
    resolution G of Y* = Hom_R(Y, R); this gives Ext^i(Y*, X*).
    ``matlis``: dim Tor_i(X, Y^v), resolving Y^v.
    """
    if i < 0:
        raise HomalgError("ext needs i >= 0")
    if method == "resolve":
        res = resolve(X, i + 1)
        return hom_homology(res.complex(i + 1), Y, i)
    if method == "coresolve":
        return ext(r_dual(Y), r_dual(X), i, "resolve")
    if method == "matlis":
        return tor(X, matlis_dual(Y), i, side="second")
    raise HomalgError(f"unknown ext method {method!r}")


def tor(X: FpModule, Y: FpModule, i: int, side: str = "first") -> int:
    """dim_k Tor_i^R(X, Y), resolving X (side="first") or Y (side="second")."""
    if i < 0:
        raise HomalgError("tor needs i >= 0")
    if side == "second":
        X, Y = Y, X
    elif side != "first":
        raise HomalgError(f"unknown side {side!r}")
    res = resolve(X, i + 1)
    return tensor_homology(res.complex(i + 1), Y, i)


# -- complete resolutions and Tate (co)homology -----------------------------------

def splice_map(X: FpModule, F0_res: Resolution, G_res: Resolution) -> RMatrix:
    """F_0 -> G_0^*: e_g -> sum_h phi_h(x_g) e_h^*, where x_g generate X and
    phi_h generate X* = Hom_R(X, R)."""
    Xs = G_res.module
    A = X.ring
    n = A.dim
    G0d = G_res.free[0].dual()
    cols = []
    for xg in F0_res.generators:
        vec = {}
        for h, phi in enumerate(G_res.generators):
            for b, c in Xs.evaluate_dual(phi, xg).items():
                vec[h * n + b] = c
        cols.append(vec)
    return RMatrix(F0_res.free[0], G0d, cols)


def complete_resolution(X: FpModule, lo: int, hi: int) -> Complex:
    """A complete resolution T with T_i for lo <= i <= hi.

    Modules with a stored construction (the preset M) use it.  Otherwise the
    minimal resolution F of X is spliced at degree 0 with Hom(G, R) for the
    minimal resolution G of X*: T_i = F_i (i >= 0), T_{-j-1} = G_j^*.
    """
    if lo > hi:
        raise HomalgError("empty range")
    if X.complete_factory is not None:
        return X.complete_factory(lo, hi)
    mods, maps = {}, {}
    if hi >= 0:
        F = resolve(X, max(hi, 0))
        for i in range(max(lo, 0), hi + 1):
            mods[i] = F.free[i]
            if i >= 1 and i - 1 >= lo:
                maps[i] = F.maps[i]
    if lo < 0:
        Xs = r_dual(X)
        need = -lo - 1
        G = resolve(Xs, need)
        for j in range(0, need + 1):
            if -j - 1 <= hi:
                mods[-j - 1] = G.free[j].dual()
            if j >= 1 and -j <= hi:
                maps[-j] = G.maps[j].dual()
        if hi >= 0:
            maps[0] = splice_map(X, F, G)
    return Complex(mods, maps)


def tate_ext(X: FpModule, Y: FpModule, i: int) -> int:
    """dim_k of Tate Ext^i(X, Y): homology of Hom(T, Y) at Hom(T_i, Y)."""
    T = complete_resolution(X, i - 1, i + 1)
    return hom_homology(T, Y, i)


def tate_tor(X: FpModule, Y: FpModule, i: int) -> int:
    """dim_k of Tate Tor_i(X, Y) = H_i(T (x) Y)."""
    T = complete_resolution(X, i - 1, i + 1)
    return tensor_homology(T, Y, i)


# -- numerical invariants -------------------------------------------------------

def betti_numbers(X: FpModule, n: int):
    """BettiTable of the minimal resolution through F_n."""
    return resolve(X, n).betti_table(n)


def bass_numbers(X: FpModule, n: int, method: str = "matlis") -> list[int]:
    """mu^0..mu^n of X, checked against the Betti numbers of X* = Hom_R(X, R).

    ``matlis``: mu^i(X) = dim Ext^i(k, X) = dim Tor_i(k, X^v) = beta_i(X^v).
    ``ext``: mu^i(X) = dim Ext^i(k, X) from the resolution of k directly.
    Raises ConsistencyError if the result differs from beta_i(X*).
    """
    if method == "matlis":
        mu = betti_numbers(matlis_dual(X), n).totals
    elif method == "ext":
        from .presets import residue_field
        k = residue_field(X.ring)
        mu = [ext(k, X, i) for i in range(n + 1)]
    else:
        raise HomalgError(f"unknown bass method {method!r}")
    beta = betti_numbers(r_dual(X), n).totals
    if mu != beta:
        raise ConsistencyError(f"Bass numbers {mu} differ from Betti numbers of the R-dual {beta}")
    return mu


def fib_lower_bound(i: int) -> int:
    """Coefficient of t^i in (2 + t) / (1 - t - t^2)."""
    if i < 0:
        raise HomalgError("i must be nonnegative")
    num = [2, 1]
    den = [1, -1, -1]
    c = []
    for n in range(i + 1):
        s = num[n] if n < len(num) else 0
        s -= sum(den[k] * c[n - k] for k in range(1, min(n, len(den) - 1) + 1))
        c.append(s)
    return c[i]
