"""Exact linear algebra over F2 and Z, cube-complex homology, and class comparison.

F2 vectors are Python ints used as bitsets (bit i = coordinate i).  Integer
matrices are handled either densely (``smith_normal_form``, with witnesses)
or sparsely (``homology``), always with arbitrary-precision ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .discrete_config import Chain, CubeComplex

F2 = "F2"
Z = "Z"


# ---------------------------------------------------------------------------
# F2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class F2Matrix:
    """Row-major bit-packed matrix over F2: ``rows[i]`` has bit j set iff entry (i, j) is 1."""

    rows: tuple[int, ...]
    ncols: int

    @classmethod
    def from_dense(cls, a) -> "F2Matrix":
        a = np.asarray(a, dtype=np.int64) % 2
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows = tuple(sum(1 << j for j in np.flatnonzero(row)) for row in a)
        return cls(rows, a.shape[1])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                out[i, j] = (r >> j) & 1
        return out

    def apply(self, v: int) -> int:
        """Matrix-vector product m.v with v a bitset over columns."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out


@dataclass(frozen=True)
class F2Rank:
    rank: int
    pivots: tuple[int, ...]
    kernel: tuple[int, ...]


def f2_rank(m: F2Matrix) -> F2Rank:
    """Rank and kernel basis over F2 by row reduction, pivoting on columns in input order."""
    rows = list(m.rows)
    pivots: list[int] = []
    pivot_rows: list[int] = []
    r = 0
    for col in range(m.ncols):
        bit = 1 << col
        for i in range(r, len(rows)):
            if rows[i] & bit:
                rows[r], rows[i] = rows[i], rows[r]
                break
        else:
            continue
        p = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= p
        pivots.append(col)
        pivot_rows.append(r)
        r += 1
        if r == len(rows):
            break
    pivot_set = set(pivots)
    kernel = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for col, i in zip(pivots, pivot_rows):
            if (rows[i] >> f) & 1:
                v |= 1 << col
        kernel.append(v)
    return F2Rank(len(pivots), tuple(pivots), tuple(kernel))


class _F2ColumnReduction:
    """Column reduction of a boundary map given as bitset columns, keyed by highest set bit.

    ``pivot`` spans the image; ``kernel`` holds column combinations reducing to zero.
    """

    def __init__(self, cols: Sequence[int]):
        self.pivot: dict[int, int] = {}
        self.kernel: list[int] = []
        combs: dict[int, int] = {}
        for j, c in enumerate(cols):
            comb = 1 << j
            while c:
                top = c.bit_length() - 1
                hit = self.pivot.get(top)
                if hit is None:
                    self.pivot[top] = c
                    combs[top] = comb
                    break
                c ^= hit
                comb ^= combs[top]
            else:
                self.kernel.append(comb)

    @property
    def rank(self) -> int:
        return len(self.pivot)


class _F2Quotient:
    """Echelon basis of B_d extended by representatives of H_d, for canonical class coordinates."""

    def __init__(self, image: dict[int, int], cycles: Iterable[int]):
        self.table: dict[int, tuple[int, int]] = {top: (v, 0) for top, v in image.items()}
        self.reps: list[int] = []
        for z in cycles:
            r, tag = self._reduce(z)
            if r:
                i = len(self.reps)
                self.reps.append(z)
                self.table[r.bit_length() - 1] = (r, tag ^ (1 << i))

    def _reduce(self, z: int) -> tuple[int, int]:
        tag = 0
        while z:
            top = z.bit_length() - 1
            hit = self.table.get(top)
            if hit is None:
                return z, tag
            z ^= hit[0]
            tag ^= hit[1]
        return 0, tag

    def coordinates(self, z: int) -> tuple[int, ...]:
        r, tag = self._reduce(z)
        if r:
            raise ValueError("chain is not a cycle")
        return tuple((tag >> i) & 1 for i in range(len(self.reps)))


# ---------------------------------------------------------------------------
# Z, dense Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    factors: tuple[int, ...]
    U: np.ndarray
    V: np.ndarray
    D: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.factors)


def _as_int_rows(m) -> list[list[int]]:
    a = np.asarray(m, dtype=object)
    if a.ndim != 2:
        if a.size == 0:
            return []
        raise ValueError("expected a 2-d integer matrix")
    return [[int(x) for x in row] for row in a]


def smith_normal_form(m) -> SmithForm:
    """Invariant factors d1 | d2 | ... with unimodular U, V such that U @ m @ V == D.

    Pivots are the smallest nonzero entry of the remaining block, which keeps
    intermediate coefficients small.
    """
    A = _as_int_rows(m)
    nr = len(A)
    nc = len(A[0]) if nr else np.asarray(m).shape[1] if np.asarray(m).ndim == 2 else 0
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_addmul(t, s, q):  # row t += q * row s
        At, As, Ut, Us = A[t], A[s], U[t], U[s]
        for j in range(nc):
            if As[j]:
                At[j] += q * As[j]
        for j in range(nr):
            if Us[j]:
                Ut[j] += q * Us[j]

    def col_addmul(t, s, q):  # col t += q * col s
        for row in A:
            if row[s]:
                row[t] += q * row[s]
        for row in V:
            if row[s]:
                row[t] += q * row[s]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    row_addmul(i, t, -(A[i][t] // p))
                    dirty |= A[i][t] != 0
            for j in range(t + 1, nc):
                if A[t][j]:
                    col_addmul(j, t, -(A[t][j] // p))
                    dirty |= A[t][j] != 0
            if dirty:
                cands = [(abs(A[i][t]), i, t) for i in range(t + 1, nr) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t + 1, nc) if A[t][j]]
                _, i, j = min(cands)
                row_swap(t, i)
                col_swap(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    factors = tuple(A[i][i] for i in range(min(nr, nc)) if A[i][i])
    obj = lambda rows, r, c: np.array(rows, dtype=object).reshape(r, c)
    return SmithForm(factors, obj(U, nr, nr), obj(V, nc, nc), obj(A, nr, nc))


def invariant_factors(diagonal: Iterable[int]) -> tuple[int, ...]:
    """Normalize a diagonal (any order, any signs) to its divisibility chain, dropping units and zeros."""
    ds = sorted(abs(d) for d in diagonal if d not in (0, 1, -1))
    changed = True
    while changed:
        changed = False
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                a, b = ds[i], ds[j]
                if b % a:
                    g = gcd(a, b)
                    ds[i], ds[j] = g, a * b // g
                    changed = True
        ds = sorted(d for d in ds if d != 1)
    return tuple(ds)


# ---------------------------------------------------------------------------
# Z, sparse diagonalization for boundary maps
# ---------------------------------------------------------------------------


class _SparseDiagonalization:
    """Diagonalize a sparse integer matrix by logged row and column operations.

    After construction ``pivots`` holds (row, col, value) with the residual
    matrix otherwise zero, and ``U m V`` is diagonal for the logged operations.
    """

    def __init__(self, columns: Sequence[Sequence[tuple[int, int]]], nrows: int):
        self.nrows = nrows
        self.ncols = len(columns)
        R: dict[int, dict[int, int]] = {}
        C: dict[int, dict[int, int]] = {}
        for j, col in enumerate(columns):
            for r, v in col:
                if not v:
                    continue
                R.setdefault(r, {})
                C.setdefault(j, {})
                nv = R[r].get(j, 0) + v
                if nv:
                    R[r][j] = nv
                    C[j][r] = nv
                else:
                    R[r].pop(j, None)
                    C[j].pop(r, None)
        self.row_ops: list[tuple[int, int, int]] = []  # row t -= q * row s
        self.col_ops: list[tuple[int, int, int]] = []  # col t -= q * col s
        self.pivots: list[tuple[int, int, int]] = []
        self._R, self._C = R, C
        self._run()
        del self._R, self._C

    def _set(self, r: int, c: int, v: int) -> None:
        R, C = self._R, self._C
        if v:
            R.setdefault(r, {})[c] = v
            C.setdefault(c, {})[r] = v
        else:
            if r in R:
                R[r].pop(c, None)
            if c in C:
                C[c].pop(r, None)

    def _row_sub(self, t: int, s: int, q: int) -> None:
        R = self._R
        rt = R.get(t, {})
        for j, v in list(R[s].items()):
            self._set(t, j, rt.get(j, 0) - q * v)
            rt = R.get(t, {})
        self.row_ops.append((t, s, q))

    def _col_sub(self, t: int, s: int, q: int) -> None:
        C = self._C
        ct = C.get(t, {})
        for i, v in list(C[s].items()):
            self._set(i, t, ct.get(i, 0) - q * v)
            ct = C.get(t, {})
        self.col_ops.append((t, s, q))

    def _choose(self) -> tuple[int, int] | None:
        C, R = self._C, self._R
        # fast path: columns in order, a unit entry in the sparsest row
        while self._cursor < len(self._order):
            c = self._order[self._cursor]
            col = C.get(c)
            if col:
                units = [r for r, v in col.items() if v in (1, -1)]
                if units:
                    return min(units, key=lambda r: (len(R[r]), r)), c
            self._cursor += 1
        best = None
        for c, col in C.items():
            if not col:
                continue
            for r, v in col.items():
                key = (abs(v), (len(col) - 1) * (len(R[r]) - 1), c, r)
                if best is None or key < best:
                    best = key
            if best[0] == 1 and best[1] == 0:
                break
        return None if best is None else (best[3], best[2])

    def _run(self) -> None:
        R, C = self._R, self._C
        self._order = sorted(C)
        self._cursor = 0
        while True:
            choice = self._choose()
            if choice is None:
                break
            r, c = choice
            while True:
                p = R[r][c]
                for r2 in [x for x in C[c] if x != r]:
                    q = C[c][r2] // p
                    if q:
                        self._row_sub(r2, r, q)
                rest = [(abs(v), x) for x, v in C[c].items() if x != r]
                if rest:
                    r = min(rest)[1]
                    continue
                for c2 in [x for x in R[r] if x != c]:
                    q = R[r][c2] // p
                    if q:
                        self._col_sub(c2, c, q)
                rest = [(abs(v), x) for x, v in R[r].items() if x != c]
                if rest:
                    c = min(rest)[1]
                    continue
                break
            # the pivot row and column are now isolated
            self.pivots.append((r, c, R[r][c]))
            del R[r]
            del C[c]
        self.pivot_rows = {r: v for r, _, v in self.pivots}
        self.pivot_cols = {c for _, c, _ in self.pivots}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def diagonal(self) -> list[int]:
        return [v for _, _, v in self.pivots]

    def transform(self, vec: Chain) -> dict[int, int]:
        """Apply the logged row operations (the matrix U) to a vector."""
        w = dict(vec)
        for t, s, q in self.row_ops:
            x = w.get(s)
            if x:
                y = w.get(t, 0) - q * x
                if y:
                    w[t] = y
                else:
                    w.pop(t, None)
        return w

    def kernel_basis(self) -> list[dict[int, int]]:
        """Z-basis of the kernel: V applied to the unit vectors of non-pivot columns."""
        out = []
        ops = self.col_ops[::-1]
        for j in range(self.ncols):
            if j in self.pivot_cols:
                continue
            x = {j: 1}
            for t, s, q in ops:
                xt = x.get(t)
                if xt:
                    y = x.get(s, 0) - q * xt
                    if y:
                        x[s] = y
                    else:
                        x.pop(s, None)
            out.append(x)
        return out


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------


@dataclass
class DegreeHomology:
    degree: int
    betti: int
    torsion: tuple[int, ...] = ()
    representatives: list[Chain] = field(default_factory=list)


class HomologyResult:
    """Homology of a cube complex with F2 or Z coefficients.

    ``coordinates(z, d)`` maps a d-cycle to canonical coordinates of its class:
    two cycles are homologous iff their coordinates agree.
    """

    def __init__(self, c: CubeComplex, coefficients: str = F2):
        if coefficients not in (F2, Z):
            raise ValueError("coefficients must be 'F2' or 'Z'")
        self.complex = c
        self.coefficients = coefficients
        self.degrees: list[DegreeHomology] = []
        if coefficients == F2:
            self._build_f2()
        else:
            self._build_z()

    # -- F2 ------------------------------------------------------------

    def _build_f2(self) -> None:
        c = self.complex
        cols = [[self._bits(col) for col in c.boundary(d)] for d in range(c.k + 2)]
        red = [_F2ColumnReduction(cs) for cs in cols]
        self._quot: list[_F2Quotient] = []
        for d in range(c.k + 1):
            n = c.num_cells(d)
            kernel = red[d].kernel if d > 0 else [1 << i for i in range(n)]
            image = red[d + 1].pivot if d + 1 <= c.k else {}
            q = _F2Quotient(image, kernel)
            self._quot.append(q)
            reps = [{i: 1 for i in range(n) if (z >> i) & 1} for z in q.reps]
            self.degrees.append(DegreeHomology(d, len(q.reps), (), reps))

    @staticmethod
    def _bits(col) -> int:
        v = 0
        for r, s in col:
            if s % 2:
                v ^= 1 << r
        return v

    # -- Z -------------------------------------------------------------

    def _build_z(self) -> None:
        c = self.complex
        self._diag: list[_SparseDiagonalization | None] = [None]
        for d in range(1, c.k + 1):
            self._diag.append(_SparseDiagonalization(c.boundary(d), c.num_cells(d - 1)))
        self._diag.append(None)
        self._reps_cache: dict[int, list[Chain]] = {}
        for d in range(c.k + 1):
            n = c.num_cells(d)
            rank_out = self._diag[d].rank if d >= 1 else 0
            img = self._diag[d + 1]
            rank_in = img.rank if img is not None else 0
            torsion = invariant_factors(img.diagonal) if img is not None else ()
            self.degrees.append(DegreeHomology(d, n - rank_out - rank_in, torsion))

    def _z_reps(self, d: int) -> list[Chain]:
        """Cycles whose classes form a basis of H_d tensor Q."""
        if d in self._reps_cache:
            return self._reps_cache[d]
        c = self.complex
        n = c.num_cells(d)
        kernel = self._diag[d].kernel_basis() if d >= 1 else [{i: 1} for i in range(n)]
        chosen: list[Chain] = []
        echelon: dict[int, dict[int, Fraction]] = {}
        target = self.degrees[d].betti
        for z in kernel:
            if len(chosen) == target:
                break
            free = self._free_coords(z, d)
            vec = {i: Fraction(x) for i, x in free}
            while vec:
                top = max(vec)
                piv = echelon.get(top)
                if piv is None:
                    echelon[top] = vec
                    chosen.append(z)
                    break
                f = vec[top] / piv[top]
                for i, x in piv.items():
                    y = vec.get(i, 0) - f * x
                    if y:
                        vec[i] = y
                    else:
                        vec.pop(i, None)
        self._reps_cache[d] = chosen
        return chosen

    def _free_coords(self, z: Chain, d: int) -> tuple[tuple[int, int], ...]:
        img = self._diag[d + 1] if d + 1 < len(self._diag) else None
        if img is None:
            return tuple(sorted((i, x) for i, x in z.items() if x))
        w = img.transform(z)
        return tuple(sorted((i, x) for i, x in w.items() if x and i not in img.pivot_rows))

    # -- public --------------------------------------------------------

    @property
    def betti(self) -> list[int]:
        return [h.betti for h in self.degrees]

    @property
    def torsion(self) -> list[tuple[int, ...]]:
        return [h.torsion for h in self.degrees]

    def representatives(self, d: int) -> list[Chain]:
        if self.coefficients == Z:
            return self._z_reps(d)
        return self.degrees[d].representatives

    def is_cycle(self, z: Chain, d: int) -> bool:
        bd = self.complex.chain_boundary(z, d) if d >= 1 else {}
        if self.coefficients == F2:
            return all(v % 2 == 0 for v in bd.values())
        return not bd

    def coordinates(self, z: Chain, d: int = 1) -> tuple:
        """Canonical coordinates of the class of the cycle ``z`` in H_d."""
        if not self.is_cycle(z, d):
            raise ValueError("chain is not a cycle")
        if self.coefficients == F2:
            bits = 0
            for i, x in z.items():
                if x % 2:
                    bits ^= 1 << i
            return self._quot[d].coordinates(bits)
        img = self._diag[d + 1] if d + 1 < len(self._diag) else None
        if img is None:
            return tuple(sorted((i, x) for i, x in z.items() if x))
        w = img.transform(z)
        out = []
        for i, x in sorted(w.items()):
            p = img.pivot_rows.get(i)
            if p is None:
                if x:
                    out.append((i, x))
            elif x % p:
                out.append((i, x % abs(p)))
        return tuple(out)

    def is_boundary(self, z: Chain, d: int = 1) -> bool:
        coords = self.coordinates(z, d)
        if self.coefficients == F2:
            return not any(coords)
        return not coords


def homology(c: CubeComplex, coefficients: str = F2) -> HomologyResult:
    return HomologyResult(c, coefficients)


def chain_add(*terms: tuple[int, Chain]) -> Chain:
    """Integer linear combination of chains: chain_add((1, a), (-1, b))."""
    out: Chain = {}
    for coeff, ch in terms:
        for i, x in ch.items():
            out[i] = out.get(i, 0) + coeff * x
    return {i: x for i, x in out.items() if x}


def class_equal(h: HomologyResult, a: Chain, b: Chain, degree: int = 1) -> bool:
    """True iff a - b is a boundary over the coefficients of ``h``."""
    if not h.is_cycle(a, degree) or not h.is_cycle(b, degree):
        raise ValueError("class_equal needs cycles")
    return h.is_boundary(chain_add((1, a), (-1, b)), degree)
