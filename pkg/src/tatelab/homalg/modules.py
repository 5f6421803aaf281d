"""Finite-length graded R-modules, stored by a homogeneous k-basis and the
action matrices of the six ring generators."""

from __future__ import annotations

from itertools import combinations_with_replacement

from .. import linalg
from ..algebra import GradedAlgebra
from .free import FreeModule, HomalgError, RMatrix, ring_times, vadd


def apply_cols(cols: list[dict], vec: dict) -> dict:
    """Sparse matrix (list of column dicts) times sparse vector."""
    out: dict = {}
    for j, c in vec.items():
        vadd(out, cols[j], c)
    return out


def _compose(a: list[dict], b: list[dict]) -> list[dict]:
    """Columns of the matrix product a*b."""
    return [apply_cols(a, col) for col in b]


class FpModule:
    """Graded module of finite length.

    ``actions[v][j]`` is ``x_v * e_j`` as a sparse vector over the k-basis,
    where ``x_v`` is the v-th ring variable.  Basis vectors are sorted by
    degree.
    """

    def __init__(self, ring: GradedAlgebra, degrees, actions, name: str = "", check: bool = True):
        self.ring = ring
        self.degrees = [int(d) for d in degrees]
        if any(a > b for a, b in zip(self.degrees, self.degrees[1:])):
            raise HomalgError("module basis must be sorted by degree")
        self.dim = len(self.degrees)
        nv = len(ring.names)
        if len(actions) != nv or any(len(a) != self.dim for a in actions):
            raise HomalgError("action matrices have the wrong shape")
        self.actions = [[{i: c for i, c in col.items() if c != 0} for col in a] for a in actions]
        self.name = name
        self._basis_actions = None
        self.hom_values = None      # set on R-duals: values of basis maps on the original basis
        self.dual_of = None
        self.complete_factory = None
        if check:
            self.verify()

    # -- basic structure ---------------------------------------------------

    @property
    def field(self):
        return self.ring.field

    def basis_in_degree(self, d: int) -> list[int]:
        return [i for i, e in enumerate(self.degrees) if e == d]

    def hilbert_function(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return out

    def basis_actions(self) -> list[list[dict]]:
        """Action matrix of every k-basis element of R (as column lists)."""
        if self._basis_actions is None:
            A = self.ring
            ident = [{j: self.field.one} for j in range(self.dim)]
            acts = []
            for m in A.basis:
                M = ident
                for v, e in enumerate(m):
                    for _ in range(e):
                        M = _compose(self.actions[v], M)
                acts.append(M)
            self._basis_actions = acts
        return self._basis_actions

    def element_action(self, r: dict) -> list[dict]:
        """Columns of the action of the ring element r = {basis index: coef}."""
        acts = self.basis_actions()
        cols = [dict() for _ in range(self.dim)]
        for b, c in r.items():
            for j, col in enumerate(acts[b]):
                vadd(cols[j], col, c)
        return cols

    def _monomial_action(self, mono) -> list[dict]:
        M = [{j: self.field.one} for j in range(self.dim)]
        for v, e in enumerate(mono):
            for _ in range(e):
                M = _compose(self.actions[v], M)
        return M

    def verify(self) -> None:
        """Graded, commuting actions satisfying the defining relations; m^4 = 0."""
        nv = len(self.actions)
        for v in range(nv):
            for j, col in enumerate(self.actions[v]):
                if any(self.degrees[i] != self.degrees[j] + 1 for i in col):
                    raise HomalgError(f"action of variable {v} is not of degree one")
        for a in range(nv):
            for b in range(a):
                if _compose(self.actions[a], self.actions[b]) != _compose(self.actions[b], self.actions[a]):
                    raise HomalgError(f"actions of variables {a} and {b} do not commute")
        pres = self.ring.presentation
        if pres is not None:
            for f in pres.basis.polys:
                acc = [dict() for _ in range(self.dim)]
                for mono, c in f.terms.items():
                    for j, col in enumerate(self._monomial_action(mono)):
                        vadd(acc[j], col, c)
                if any(acc):
                    raise HomalgError(f"relation {f.to_str(pres.names)} does not act by zero")
        top = self.ring.top_degree + 1
        for word in combinations_with_replacement(range(nv), top):
            mono = [0] * nv
            for v in word:
                mono[v] += 1
            if any(self._monomial_action(mono)):
                raise HomalgError("a product of generators of length m^4 acts nontrivially")

    def __repr__(self):
        hf = self.hilbert_function()
        return f"<FpModule {self.name or ''} dim={self.dim} hilbert={dict(sorted(hf.items()))}>"

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_actions(cls, ring, degrees, actions, name=""):
        return cls(ring, degrees, actions, name)

    @classmethod
    def cokernel(cls, phi: RMatrix, name: str = "") -> "FpModule":
        """Coker(phi) for a homogeneous map of free modules."""
        A = phi.ring
        field = A.field
        F0 = phi.target
        reducers = {}
        degrees = []
        offset = {}
        for d in F0.degrees():
            tgt = F0.basis_in_degree(d)
            pos = {k: i for i, k in enumerate(tgt)}
            rows = []
            for idx in phi.source.basis_in_degree(d):
                img = phi.image_of(idx)
                if img:
                    row = [field.zero] * len(tgt)
                    for k, v in img.items():
                        row[pos[k]] = v
                    rows.append(row)
            piv, block, free = linalg.rref(field, rows, len(tgt)) if rows else ([], [], list(range(len(tgt))))
            reducers[d] = (pos, piv, block, free, tgt)
            offset[d] = len(degrees)
            degrees.extend([d] * len(free))

        def reduce(vec: dict, d: int) -> dict:
            if d not in reducers:
                return {}
            pos, piv, block, free, tgt = reducers[d]
            out = {}
            for k, fcol in enumerate(free):
                s = vec.get(tgt[fcol], field.zero)
                for i, pcol in enumerate(piv):
                    w = vec.get(tgt[pcol])
                    if w is not None:
                        s -= w * block[i][k]
                if s != 0:
                    out[offset[d] + k] = s
            return out

        actions = [[None] * len(degrees) for _ in A.names]
        for d, (pos, piv, block, free, tgt) in reducers.items():
            for k, fcol in enumerate(free):
                unit = {tgt[fcol]: field.one}
                for v, gi in enumerate(A.generator_indices):
                    actions[v][offset[d] + k] = reduce(ring_times(A, gi, unit), d + 1)
        mod = cls(A, degrees, actions, name)
        mod._reduce = reduce
        mod.ambient = F0
        return mod

    @classmethod
    def kernel(cls, phi: RMatrix, name: str = "") -> "FpModule":
        """Ker(phi) as a submodule of the source free module."""
        A = phi.ring
        field = A.field
        F = phi.source
        vectors = []
        degrees = []
        coords = {}
        for d in F.degrees():
            rows, src, tgt = phi.kmatrix(d)
            if not src:
                continue
            vecs, free = linalg.kernel(field, rows, len(src)) if tgt else (
                [[field.one if i == j else field.zero for i in range(len(src))] for j in range(len(src))],
                list(range(len(src))))
            coords[d] = (len(vectors), [src[f] for f in free])
            for v in vecs:
                vectors.append({src[i]: c for i, c in enumerate(v) if c != 0})
                degrees.append(d)

        def coordinates(vec: dict, d: int) -> dict:
            if d not in coords:
                return {}
            off, cols = coords[d]
            return {off + k: vec[c] for k, c in enumerate(cols) if vec.get(c, 0) != 0}

        actions = [[None] * len(vectors) for _ in A.names]
        for j, w in enumerate(vectors):
            for v, gi in enumerate(A.generator_indices):
                actions[v][j] = coordinates(ring_times(A, gi, w), degrees[j] + 1)
        mod = cls(A, degrees, actions, name)
        mod.ambient = F
        mod.ambient_vectors = vectors
        mod._coordinates = coordinates
        return mod

    @classmethod
    def cyclic(cls, ring: GradedAlgebra, linear_forms, name: str = "") -> "FpModule":
        """R/(linear forms); forms are AlgebraElements of degree one."""
        F0 = FreeModule(ring, [0])
        F1 = FreeModule(ring, [1] * len(linear_forms))
        phi = RMatrix.from_entries(F1, F0, [list(linear_forms)])
        return cls.cokernel(phi, name)

    # -- dualities ---------------------------------------------------------

    def contains(self, vec: dict) -> bool:
        """Membership of an ambient vector in a submodule built by ``kernel``."""
        if not hasattr(self, "ambient_vectors"):
            raise HomalgError("module is not a submodule of a free module")
        degs = {self.ambient.degree(k) for k in vec}
        if not vec:
            return True
        if len(degs) != 1:
            return all(self.contains({k: c for k, c in vec.items() if self.ambient.degree(k) == d})
                       for d in degs)
        d = degs.pop()
        coords = self._coordinates(vec, d)
        recon: dict = {}
        for j, c in coords.items():
            vadd(recon, self.ambient_vectors[j], c)
        return recon == {k: c for k, c in vec.items() if c != 0}

    def matlis_dual(self) -> "FpModule":
        """Hom_k(X, k) with transposed actions, basis reversed to stay sorted."""
        n = self.dim
        degrees = [-self.degrees[n - 1 - i] for i in range(n)]
        actions = []
        for act in self.actions:
            cols = [dict() for _ in range(n)]
            for j, col in enumerate(act):
                for i, c in col.items():
                    # x * f_i = sum_j f_i(x e_j) f_j
                    cols[n - 1 - i][n - 1 - j] = c
            actions.append(cols)
        return FpModule(self.ring, degrees, actions, f"{self.name}^v" if self.name else "")

    def r_dual(self) -> "FpModule":
        """Hom_R(X, R), computed degree by degree as R-linear maps X -> R."""
        A = self.ring
        field = A.field
        deg_of_b = A.degrees
        by_deg: dict[int, list[int]] = {}
        for b, d in enumerate(deg_of_b):
            by_deg.setdefault(d, []).append(b)
        if self.dim == 0:
            return FpModule(A, [], [[] for _ in A.names], check=False)
        lo = -max(self.degrees)
        hi = A.top_degree - min(self.degrees)
        spaces = {}
        for e in range(lo, hi + 1):
            unknowns = [(j, b) for j in range(self.dim) for b in by_deg.get(self.degrees[j] + e, [])]
            if not unknowns:
                continue
            uidx = {u: k for k, u in enumerate(unknowns)}
            rows = []
            for v, gi in enumerate(A.generator_indices):
                for j in range(self.dim):
                    eqs: dict[int, dict] = {}
                    for l, a in self.actions[v][j].items():
                        for b in by_deg.get(self.degrees[j] + e + 1, []):
                            eqs.setdefault(b, {})
                            vadd(eqs[b], {uidx[(l, b)]: a})
                    for b in by_deg.get(self.degrees[j] + e, []):
                        for m, c in A.table[gi][b]:
                            eqs.setdefault(m, {})
                            vadd(eqs[m], {uidx[(j, b)]: -c})
                    for eq in eqs.values():
                        if eq:
                            row = [field.zero] * len(unknowns)
                            for k, c in eq.items():
                                row[k] = c
                            rows.append(row)
            if rows:
                vecs, free = linalg.kernel(field, rows, len(unknowns))
            else:
                free = list(range(len(unknowns)))
                vecs = [[field.one if i == f else field.zero for i in range(len(unknowns))] for f in free]
            if vecs:
                spaces[e] = (unknowns, uidx, vecs, free)
        degrees, offset, basis = [], {}, []
        for e in sorted(spaces):
            offset[e] = len(degrees)
            for vec in spaces[e][2]:
                degrees.append(e)
                basis.append((e, vec))
        actions = [[None] * len(basis) for _ in A.names]
        hom_values = []
        for k, (e, vec) in enumerate(basis):
            unknowns, uidx, _, _ = spaces[e]
            vals: dict[int, dict] = {}
            for (j, b), c in zip(unknowns, vec):
                if c != 0:
                    vals.setdefault(j, {})[b] = c
            hom_values.append(vals)
            for v, gi in enumerate(A.generator_indices):
                if e + 1 not in spaces:
                    actions[v][k] = {}
                    continue
                u2, uidx2, _, free2 = spaces[e + 1]
                img = [field.zero] * len(u2)
                for (j, b), c in zip(unknowns, vec):
                    if c == 0:
                        continue
                    for m, c2 in A.table[gi][b]:
                        img[uidx2[(j, m)]] += c * c2
                actions[v][k] = {offset[e + 1] + t: img[f] for t, f in enumerate(free2) if img[f] != 0}
        dual = FpModule(A, degrees, actions, f"{self.name}^*" if self.name else "")
        if dual.dim != self.dim:
            raise HomalgError(f"Hom_R(X,R) has dimension {dual.dim} but X has {self.dim}; R is not Gorenstein?")
        dual.hom_values = hom_values
        dual.dual_of = self
        return dual

    def evaluate_dual(self, phi: dict, x: dict) -> dict:
        """phi(x) in R for phi in this R-dual module and x in the original module."""
        if self.hom_values is None:
            raise HomalgError("module was not built by r_dual")
        out: dict = {}
        for k, c in phi.items():
            for j, vals in self.hom_values[k].items():
                xj = x.get(j)
                if xj is None:
                    continue
                vadd(out, vals, c * xj)
        return out
