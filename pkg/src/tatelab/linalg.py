"""Exact linear algebra over Q or F_p.

Matrices are python-flint ``fmpq_mat`` (rational mode) or ``nmod_mat`` (prime
mode); dense row lists are accepted by the convenience wrappers.  Exact
rational elimination is flint's.  ``rref_multimodular`` is a separate
implementation (reduction modulo 62-bit primes, CRT, rational reconstruction,
then an exact check ``A x = 0`` of the lifted kernel) used to cross-check it.

Ranks first try a modular lower bound: when it already meets a known upper
bound the exact elimination is skipped.
"""

from __future__ import annotations

from math import gcd, isqrt

import flint

from .scalars import Field


def _primes(count: int, start: int = 2**62) -> list[int]:
    out = []
    p = start - 1
    while len(out) < count:
        if flint.fmpz(p).is_prime():
            out.append(p)
        p -= 2
    return out


PRIMES = _primes(40)


class LinAlgError(RuntimeError):
    """Certification failed after exhausting the prime list."""


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _integer_rows(rows) -> list[list[int]]:
    """Scale each rational row to a primitive-free integer row (same row space)."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            q = int(x.q)
            if q != 1:
                den = _lcm(den, q)
        if den == 1:
            out.append([int(x.p) for x in row])
        else:
            out.append([int(x.p) * (den // int(x.q)) for x in row])
    return out


def _ratrecon(a: int, m: int):
    """Rational reconstruction of a mod m, or None."""
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return flint.fmpq(r1, s1)


def _pivots_of(R, nrows: int, ncols: int, rank: int) -> list[int]:
    ent = R.entries()
    piv = []
    j = 0
    for i in range(rank):
        base = i * ncols
        while int(ent[base + j]) == 0:
            j += 1
        piv.append(j)
        j += 1
    return piv


def _rref_mod(Z: flint.fmpz_mat, p: int):
    Rp, r = flint.nmod_mat(Z, p).rref()
    piv = _pivots_of(Rp, Z.nrows(), Z.ncols(), r)
    return Rp, piv


def rref_multimodular(rows: list, ncols: int):
    """Certified rref over Q by CRT and rational reconstruction.

    Returns (pivots, block) where block[i][k] is the entry of pivot row i in
    the k-th non-pivot column.  Independent of flint's rational elimination,
    so the two can be compared.
    """
    m = len(rows)
    if m == 0 or ncols == 0:
        return [], []
    Z = flint.fmpz_mat(m, ncols, [x for row in _integer_rows(rows) for x in row])
    if Z.is_zero():
        return [], []
    best_piv = None
    free = None
    residues = None
    modulus = 1
    last = None
    for p in PRIMES:
        Rp, piv = _rref_mod(Z, p)
        if best_piv is None or len(piv) > len(best_piv) or (len(piv) == len(best_piv) and piv < best_piv):
            best_piv = piv
            pivset = set(piv)
            free = [j for j in range(ncols) if j not in pivset]
            ent = Rp.entries()
            residues = [[int(ent[i * ncols + j]) for j in free] for i in range(len(piv))]
            modulus = p
            last = None
        elif piv != best_piv:
            continue
        else:
            # CRT-combine the new residues into the accumulated ones
            inv = pow(modulus, -1, p)
            ent = Rp.entries()
            for i in range(len(piv)):
                acc = residues[i]
                base = i * ncols
                for k, j in enumerate(free):
                    a = acc[k]
                    b = int(ent[base + j])
                    acc[k] = a + modulus * (((b - a) * inv) % p)
            modulus *= p
        if not free:
            return best_piv, [[] for _ in best_piv]
        block = []
        ok = True
        for acc in residues:
            row = []
            for a in acc:
                q = _ratrecon(a, modulus)
                if q is None:
                    ok = False
                    break
                row.append(q)
            if not ok:
                break
            block.append(row)
        if not ok or block == last:
            continue
        if _verify_kernel(Z, best_piv, free, block):
            return best_piv, block
        last = block
    raise LinAlgError("rational rref could not be certified")


def _verify_kernel(Z: flint.fmpz_mat, piv, free, block) -> bool:
    """Exact check that the kernel vectors implied by ``block`` satisfy Z x = 0."""
    n = Z.ncols()
    f = len(free)
    X = flint.fmpz_mat(n, f)
    for k, j in enumerate(free):
        den = 1
        for i in range(len(piv)):
            q = int(block[i][k].q)
            if q != 1:
                den = _lcm(den, q)
        X[j, k] = den
        for i, pj in enumerate(piv):
            e = block[i][k]
            if e != 0:
                X[pj, k] = -int(e.p) * (den // int(e.q))
    return (Z * X).is_zero()


def from_rows(field: Field, rows: list, ncols: int):
    return field.matrix(len(rows), ncols, [x for row in rows for x in row])


def from_sparse(field: Field, nrows: int, ncols: int, triples):
    """Matrix from (row, col, value) triples; later triples overwrite."""
    M = field.matrix(nrows, ncols)
    for i, j, v in triples:
        M[i, j] = v
    return M


def rref_of(M, field: Field):
    """(pivots, block, free) of a flint matrix over ``field``.

    ``block[i][k]`` is the entry of pivot row i in the k-th free column.
    """
    m, n = M.nrows(), M.ncols()
    if m == 0 or n == 0:
        return [], [], list(range(n))
    R, r = M.rref()
    piv = []
    j = 0
    for i in range(r):
        while R[i, j] == 0:
            j += 1
        piv.append(j)
        j += 1
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    if not free or not r:
        return piv, [[] for _ in piv], free
    ent = R.entries()
    block = [[ent[i * n + j] for j in free] for i in range(r)]
    return piv, block, free


def rref(field: Field, rows: list, ncols: int):
    """Reduced row echelon form of a dense row list.

    Returns ``(pivots, block, free)``: pivot column indices, the entries of
    each pivot row in the non-pivot columns, and the non-pivot columns.
    """
    if not rows or ncols == 0:
        return [], [], list(range(ncols))
    return rref_of(from_rows(field, rows, ncols), field)


def rref_rows(field: Field, rows: list, ncols: int) -> tuple[list[list], list[int]]:
    """Full rref rows (dense) and pivot columns."""
    piv, block, free = rref(field, rows, ncols)
    out = []
    for i, pj in enumerate(piv):
        row = [field.zero] * ncols
        row[pj] = field.one
        for k, j in enumerate(free):
            row[j] = block[i][k]
        out.append(row)
    return out, piv


def modular_rank_of(M, field: Field) -> int:
    """rank of M mod a large prime: a lower bound for the rank over Q."""
    if M.nrows() == 0 or M.ncols() == 0:
        return 0
    if field.p:
        return M.rank()
    Z, _ = M.numer_denom()
    return flint.nmod_mat(Z, PRIMES[0]).rank()


def sparse_pivots(field: Field, rows, ncols: int) -> list[int]:
    """Pivot columns of the row space of sparse rows {col: value}.

    Incremental elimination with the leftmost nonzero entry as pivot; the
    pivot set equals that of the reduced echelon form.  Stops early once
    every column is a pivot.  ``rows`` may be a lazy iterable.
    """
    piv: dict[int, dict] = {}
    for r in rows:
        r = dict(r)
        while r:
            c = min(r)
            pr = piv.get(c)
            if pr is None:
                inv = field.one / r[c]
                piv[c] = {j: v * inv for j, v in r.items()}
                break
            f = r[c]
            for j, v in pr.items():
                w = r.get(j)
                w = -f * v if w is None else w - f * v
                if w == 0:
                    r.pop(j, None)
                else:
                    r[j] = w
        if len(piv) >= ncols:
            break
    return sorted(piv)


def sparse_rref(field: Field, rows, ncols: int) -> dict[int, dict]:
    """Reduced row echelon form of sparse rows: {pivot column: row}.

    Each stored row has a 1 at its pivot and no entry at any other pivot
    column, so the result is the (unique) reduced echelon basis of the row
    space.  Pivot rule: leftmost nonzero entry.  ``where[j]`` records which
    stored rows have an entry in the non-pivot column j.
    """
    piv: dict[int, dict] = {}
    where: dict[int, set] = {}
    for r in rows:
        r = dict(r)
        for j in [j for j in r if j in piv]:
            f = r.get(j)
            if f is None:
                continue
            for k, v in piv[j].items():
                w = r.get(k)
                w = -f * v if w is None else w - f * v
                if w == 0:
                    r.pop(k, None)
                else:
                    r[k] = w
        if not r:
            continue
        c = min(r)
        inv = field.one / r[c]
        r = {j: v * inv for j, v in r.items()}
        for pc in where.pop(c, ()):
            other = piv[pc]
            f = other.pop(c)
            for k, v in r.items():
                if k == c:
                    continue
                w = other.get(k)
                if w is None:
                    other[k] = -f * v
                    where.setdefault(k, set()).add(pc)
                else:
                    w = w - f * v
                    if w == 0:
                        del other[k]
                        where[k].discard(pc)
                    else:
                        other[k] = w
        piv[c] = r
        for k in r:
            if k != c:
                where.setdefault(k, set()).add(c)
    return piv


def sparse_kernel(field: Field, rows, ncols: int) -> tuple[list[dict], list[int]]:
    """Same basis as ``kernel_of`` (1 at the k-th free column), from sparse rows."""
    # The reduced form does not depend on the row order; short rows first
    # keeps the intermediate fill-in small.
    piv = sparse_rref(field, sorted(rows, key=len), ncols)
    free = [j for j in range(ncols) if j not in piv]
    fpos = {j: k for k, j in enumerate(free)}
    one = field.one
    vecs = [{j: one} for j in free]
    for c, r in piv.items():
        for j, v in r.items():
            if j != c:
                vecs[fpos[j]][c] = -v
    return vecs, free


def rank_of(M, field: Field, at_most: int | None = None) -> int:
    """Exact rank.  ``at_most`` is a known upper bound that short-cuts the
    exact computation when the modular lower bound already reaches it."""
    if M.nrows() == 0 or M.ncols() == 0:
        return 0
    r = modular_rank_of(M, field)
    if field.p or r == min(M.nrows(), M.ncols()) or (at_most is not None and r >= at_most):
        return r
    return M.rank()


def rank(field: Field, rows: list, ncols: int, at_most: int | None = None) -> int:
    if not rows or ncols == 0:
        return 0
    return rank_of(from_rows(field, rows, ncols), field, at_most)


def kernel_of(M, field: Field) -> tuple[list[dict], list[int]]:
    """Sparse kernel basis {col: value}; vector k is 1 at the k-th free column."""
    piv, block, free = rref_of(M, field)
    one = field.one
    vecs = []
    for k, j in enumerate(free):
        v = {j: one}
        for i, pj in enumerate(piv):
            e = block[i][k]
            if e != 0:
                v[pj] = -e
        vecs.append(v)
    return vecs, free


def kernel(field: Field, rows: list, ncols: int) -> tuple[list[list], list[int]]:
    """Basis of {x : A x = 0}.

    Vector k has a 1 in the k-th non-pivot column and 0 in the other
    non-pivot columns; the second return value lists those columns.  This
    basis depends only on the kernel, not on how it was computed.
    """
    if not rows:
        free = list(range(ncols))
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in free], free
    sparse, free = kernel_of(from_rows(field, rows, ncols), field)
    out = []
    for v in sparse:
        row = [field.zero] * ncols
        for j, c in v.items():
            row[j] = c
        out.append(row)
    return out, free


def transpose(rows: list, ncols: int) -> list[list]:
    if not rows:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*rows)]
