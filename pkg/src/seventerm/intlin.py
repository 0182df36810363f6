"""Exact integer linear algebra: Smith normal form, integer lattices, modular solving.

Everything here runs on arbitrary-precision Python ints.  The elimination
engine keeps the working matrix in sparse row/column mirrors so that the large
coboundary matrices produced by the cohomology layer (tens of thousands of
rows, a few hundred columns, a handful of entries per row) stay cheap.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b == g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


# ---------------------------------------------------------------------------
# Dense matrices (small, public-facing)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with exact entries."""

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("entry storage inconsistent with declared shape")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        data = tuple(tuple(int(v) for v in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return IntMatrix(len(data), cols, data)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __getitem__(self, rc: tuple[int, int]) -> int:
        return self.data[rc[0]][rc[1]]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.data)) if self.data else ())

    def mat_mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ot = other.transpose().data
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot) for row in self.data
        )
        return IntMatrix(self.rows, other.cols, data)

    def vec_mul(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum(a * b for a, b in zip(row, v)) for row in self.data]

    def entries(self) -> Iterator[tuple[int, int, int]]:
        for i, row in enumerate(self.data):
            for j, v in enumerate(row):
                if v:
                    yield i, j, v

    def is_diagonal(self) -> bool:
        return all(i == j for i, j, _ in self.entries())


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = [list(row) for row in m.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


# ---------------------------------------------------------------------------
# Row-style Hermite lattices (canonical coset representatives)
# ---------------------------------------------------------------------------


class IntegerLattice:
    """Sublattice of Z^n maintained as a row-echelon (Hermite) basis.

    Supports membership tests and canonical coset representatives: two
    vectors are congruent mod the lattice iff ``reduce`` sends them to the
    same tuple.
    """

    def __init__(self, n: int, rows: Iterable[Sequence[int]] = ()) -> None:
        self.n = n
        self.basis: list[list[int]] = []  # echelon rows, pivot columns increasing
        self.pivot_cols: list[int] = []
        for r in rows:
            self.add(r)

    def add(self, vec0: Sequence[int]) -> None:
        if len(vec0) != self.n:
            raise ValueError("dimension mismatch")
        vec = [int(v) for v in vec0]
        i = 0
        j = 0
        while True:
            while j < self.n and vec[j] == 0:
                j += 1
            if j == self.n:
                return
            while i < len(self.pivot_cols) and self.pivot_cols[i] < j:
                i += 1
            if i == len(self.pivot_cols) or self.pivot_cols[i] > j:
                if vec[j] < 0:
                    vec = [-v for v in vec]
                self.basis.insert(i, vec)
                self.pivot_cols.insert(i, j)
                self._renormalize(i)
                return
            row = self.basis[i]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for k in range(j, self.n):
                    vec[k] -= q * row[k]
            else:
                g, x, y = xgcd(a, b)
                mbg, ag = -(b // g), a // g
                for k in range(j, self.n):
                    rk, vk = row[k], vec[k]
                    row[k] = x * rk + y * vk
                    vec[k] = mbg * rk + ag * vk
                self._renormalize(i)

    def _renormalize(self, start: int) -> None:
        # Keep pivots positive and entries above each pivot in [0, pivot).
        for i in range(len(self.basis) - 1, start - 1, -1):
            j = self.pivot_cols[i]
            row = self.basis[i]
            if row[j] < 0:
                self.basis[i] = row = [-v for v in row]
            p = row[j]
            for i2 in range(i):
                above = self.basis[i2]
                q = above[j] // p
                if q:
                    for k in range(j, self.n):
                        above[k] -= q * row[k]

    def reduce(self, vec0: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of ``vec0`` modulo the lattice."""
        vec = [int(v) for v in vec0]
        for i, j in enumerate(self.pivot_cols):
            row = self.basis[i]
            q = vec[j] // row[j]
            if q:
                for k in range(j, self.n):
                    vec[k] -= q * row[k]
        return tuple(vec)

    def __contains__(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    def hnf_rows(self) -> tuple[tuple[int, ...], ...]:
        self._renormalize(0)
        return tuple(tuple(r) for r in self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerLattice):
            return NotImplemented
        return self.n == other.n and self.hnf_rows() == other.hnf_rows()

    def rank(self) -> int:
        return len(self.basis)


# ---------------------------------------------------------------------------
# Sparse elimination engine
# ---------------------------------------------------------------------------


class Diagonalization:
    """Result of an exact diagonalization U*A*V = diag (U optional).

    ``pivots`` maps column -> (row, value) for the nonzero diagonal entries;
    all other rows/columns of the transformed matrix are zero.  ``v_cols``
    holds V column-wise and ``vinv_rows`` holds V^-1 row-wise, both sparse.
    """

    def __init__(
        self,
        m: int,
        n: int,
        pivots: dict[int, tuple[int, int]],
        v_cols: list[dict[int, int]],
        vinv_rows: list[dict[int, int]],
        u_rows: Optional[list[dict[int, int]]],
    ) -> None:
        self.m = m
        self.n = n
        self.pivots = pivots
        self.v_cols = v_cols
        self.vinv_rows = vinv_rows
        self.u_rows = u_rows

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def pivot_value(self, col: int) -> int:
        entry = self.pivots.get(col)
        return entry[1] if entry else 0

    def v_combination(self, coeffs: dict[int, int]) -> list[int]:
        """x = V * y for a sparse coefficient vector y (dict col -> coeff)."""
        x = [0] * self.n
        for c, w in coeffs.items():
            if not w:
                continue
            for r, v in self.v_cols[c].items():
                x[r] += w * v
        return x

    def vinv_apply(self, x: Sequence[int]) -> list[int]:
        """y = V^-1 * x."""
        out = [0] * self.n
        for j, row in enumerate(self.vinv_rows):
            out[j] = sum(v * x[i] for i, v in row.items())
        return out

    def u_apply(self, b: Sequence[int]) -> list[int]:
        if self.u_rows is None:
            raise ValueError("U was not tracked for this elimination")
        return [sum(v * b[j] for j, v in row.items()) for row in self.u_rows]


class _Eliminator:
    """Sparse integer diagonalization by unimodular row/column operations."""

    def __init__(self, m: int, n: int, entries: Iterable[tuple[int, int, int]], track_u: bool):
        self.m = m
        self.n = n
        self.rows: list[dict[int, int]] = [dict() for _ in range(m)]
        self.cols: list[dict[int, int]] = [dict() for _ in range(n)]
        for r, c, v in entries:
            if v:
                cur = self.rows[r].get(c, 0) + v
                if cur:
                    self.rows[r][c] = cur
                    self.cols[c][r] = cur
                else:
                    self.rows[r].pop(c, None)
                    self.cols[c].pop(r, None)
        self.v_cols: list[dict[int, int]] = [{c: 1} for c in range(n)]
        self.vinv_rows: list[dict[int, int]] = [{c: 1} for c in range(n)]
        self.u_rows: Optional[list[dict[int, int]]] = (
            [{r: 1} for r in range(m)] if track_u else None
        )
        self.row_locked = [False] * m
        self.col_locked = [False] * n
        self.pivots: dict[int, tuple[int, int]] = {}
        self._unit_heap: list[tuple[int, int, int]] = []
        for r in range(m):
            for c, v in self.rows[r].items():
                if v in (1, -1):
                    self._push_unit(r, c)

    # -- primitive updates ---------------------------------------------------

    def _set(self, r: int, c: int, v: int) -> None:
        if v:
            self.rows[r][c] = v
            self.cols[c][r] = v
            if v in (1, -1):
                self._push_unit(r, c)
        else:
            self.rows[r].pop(c, None)
            self.cols[c].pop(r, None)

    def _push_unit(self, r: int, c: int) -> None:
        score = (len(self.rows[r]) - 1) * (len(self.cols[c]) - 1)
        heapq.heappush(self._unit_heap, (score, r, c))

    def _row_op(self, dst: int, src: int, q: int) -> None:
        # row_dst -= q * row_src
        if not q:
            return
        for c, v in list(self.rows[src].items()):
            self._set(dst, c, self.rows[dst].get(c, 0) - q * v)
        if self.u_rows is not None:
            urow = self.u_rows[dst]
            for j, v in self.u_rows[src].items():
                nv = urow.get(j, 0) - q * v
                if nv:
                    urow[j] = nv
                else:
                    urow.pop(j, None)

    def _col_op(self, dst: int, src: int, q: int) -> None:
        # col_dst -= q * col_src;  V follows, V^-1 takes the inverse row op.
        if not q:
            return
        for r, v in list(self.cols[src].items()):
            self._set(r, dst, self.rows[r].get(dst, 0) - q * v)
        vd, vs = self.v_cols[dst], self.v_cols[src]
        for r, v in vs.items():
            nv = vd.get(r, 0) - q * v
            if nv:
                vd[r] = nv
            else:
                vd.pop(r, None)
        ws, wd = self.vinv_rows[src], self.vinv_rows[dst]
        for j, v in wd.items():
            nv = ws.get(j, 0) + q * v
            if nv:
                ws[j] = nv
            else:
                ws.pop(j, None)

    def _row_transform(self, r1: int, r2: int, x: int, y: int, z: int, w: int) -> None:
        # (row_r1, row_r2) <- (x*row_r1 + y*row_r2, z*row_r1 + w*row_r2), det +-1
        cols = set(self.rows[r1]) | set(self.rows[r2])
        for c in cols:
            a = self.rows[r1].get(c, 0)
            b = self.rows[r2].get(c, 0)
            self._set(r1, c, x * a + y * b)
            self._set(r2, c, z * a + w * b)
        if self.u_rows is not None:
            u1, u2 = self.u_rows[r1], self.u_rows[r2]
            keys = set(u1) | set(u2)
            n1, n2 = {}, {}
            for j in keys:
                a = u1.get(j, 0)
                b = u2.get(j, 0)
                va, vb = x * a + y * b, z * a + w * b
                if va:
                    n1[j] = va
                if vb:
                    n2[j] = vb
            self.u_rows[r1], self.u_rows[r2] = n1, n2

    def _col_transform(self, c1: int, c2: int, x: int, y: int, z: int, w: int) -> None:
        # (col_c1, col_c2) <- (x*c1 + y*c2, z*c1 + w*c2) with xw - yz = det = +-1.
        d = x * w - y * z
        rows = set(self.cols[c1]) | set(self.cols[c2])
        for r in rows:
            a = self.rows[r].get(c1, 0)
            b = self.rows[r].get(c2, 0)
            self._set(r, c1, x * a + y * b)
            self._set(r, c2, z * a + w * b)
        v1, v2 = self.v_cols[c1], self.v_cols[c2]
        keys = set(v1) | set(v2)
        m1, m2 = {}, {}
        for r in keys:
            a = v1.get(r, 0)
            b = v2.get(r, 0)
            va, vb = x * a + y * b, z * a + w * b
            if va:
                m1[r] = va
            if vb:
                m2[r] = vb
        self.v_cols[c1], self.v_cols[c2] = m1, m2
        # inverse of [[x, z], [y, w]] is (1/d)*[[w, -z], [-y, x]]; d is +-1
        w1, w2 = self.vinv_rows[c1], self.vinv_rows[c2]
        keys = set(w1) | set(w2)
        n1, n2 = {}, {}
        for j in keys:
            a = w1.get(j, 0)
            b = w2.get(j, 0)
            va = (w * a - z * b) * d
            vb = (-y * a + x * b) * d
            if va:
                n1[j] = va
            if vb:
                n2[j] = vb
        self.vinv_rows[c1], self.vinv_rows[c2] = n1, n2

    # -- pivoting -------------------------------------------------------------

    def _find_pivot(self) -> Optional[tuple[int, int]]:
        heap = self._unit_heap
        while heap:
            _, r, c = heapq.heappop(heap)
            if self.row_locked[r] or self.col_locked[c]:
                continue
            v = self.rows[r].get(c, 0)
            if v in (1, -1):
                return r, c
        best = None
        best_key = None
        for r in range(self.m):
            if self.row_locked[r]:
                continue
            for c, v in self.rows[r].items():
                key = (abs(v), (len(self.rows[r]) - 1) * (len(self.cols[c]) - 1))
                if best_key is None or key < best_key:
                    best_key = key
                    best = (r, c)
        return best

    def run(self) -> None:
        while True:
            found = self._find_pivot()
            if found is None:
                break
            r, c = found
            self._isolate(r, c)
            self.row_locked[r] = True
            self.col_locked[c] = True
            self.pivots[c] = (r, self.rows[r][c])
            # Physically detach the pivot row/column from the mirrors.
            for c2 in list(self.rows[r]):
                self.cols[c2].pop(r, None)
            self.rows[r] = {c: self.pivots[c][1]}
            self.cols[c] = {r: self.pivots[c][1]}

    def _isolate(self, r: int, c: int) -> None:
        while True:
            piv = self.rows[r][c]
            # Make the pivot divide its column, then clear the column.
            changed = False
            for r2, v in list(self.cols[c].items()):
                if r2 == r or self.row_locked[r2]:
                    continue
                piv = self.rows[r][c]
                if v % piv:
                    g, x, y = xgcd(piv, v)
                    self._row_transform(r, r2, x, y, -(v // g), piv // g)
                    changed = True
            piv = self.rows[r][c]
            for r2, v in list(self.cols[c].items()):
                if r2 != r:
                    self._row_op(r2, r, v // piv)
            # Column is now a singleton; fix divisibility along the row.
            for c2, v in list(self.rows[r].items()):
                if c2 == c or self.col_locked[c2]:
                    continue
                piv = self.rows[r][c]
                if v % piv:
                    g, x, y = xgcd(piv, v)
                    self._col_transform(c, c2, x, y, -(v // g), piv // g)
                    changed = True
            piv = self.rows[r][c]
            for c2, v in list(self.rows[r].items()):
                if c2 != c:
                    self._col_op(c2, c, v // piv)
            # Column ops above touched only the pivot row (the pivot column was
            # a singleton), so the column stayed clean unless a gcd transform ran.
            if not changed and len(self.cols[c]) == 1 and len(self.rows[r]) == 1:
                return


def sparse_diagonalize(
    m: int,
    n: int,
    entries: Iterable[tuple[int, int, int]],
    track_u: bool = False,
) -> Diagonalization:
    """Diagonalize an integer matrix given by sparse (row, col, value) entries."""
    elim = _Eliminator(m, n, entries, track_u)
    elim.run()
    return Diagonalization(m, n, elim.pivots, elim.v_cols, elim.vinv_rows, elim.u_rows)


def kernel_basis(m: int, n: int, entries: Iterable[tuple[int, int, int]]) -> list[list[int]]:
    """Basis of the integer kernel {x : A x = 0} as a list of length-n vectors."""
    diag = sparse_diagonalize(m, n, entries)
    out = []
    for c in range(n):
        if c not in diag.pivots:
            out.append(diag.v_combination({c: 1}))
    return out


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SnfDecomposition:
    """U * A * V = S with U, V unimodular, S = diag(d1, ..., dr, 0, ...), d_i | d_{i+1}."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]


def smith_normal_form(a: IntMatrix) -> SnfDecomposition:
    """Smith normal form with both unimodular transforms."""
    m, n = a.rows, a.cols
    elim = _Eliminator(m, n, a.entries(), track_u=True)
    elim.run()
    # Dense copies of the transforms, then permute pivots onto the leading diagonal.
    u = [[elim.u_rows[i].get(j, 0) for j in range(m)] for i in range(m)]
    v = [[elim.v_cols[j].get(i, 0) for j in range(n)] for i in range(n)]
    pivots = sorted(
        ((col, row, val) for col, (row, val) in elim.pivots.items()),
        key=lambda t: (abs(t[2]), t[0]),
    )
    diag: list[int] = []
    for k, (col, row, val) in enumerate(pivots):
        _swap_rows(u, k, row)
        _swap_cols(v, k, col)
        # Track position changes of the remaining pivots.
        for idx in range(k + 1, len(pivots)):
            c2, r2, v2 = pivots[idx]
            if r2 == k:
                r2 = row
            elif r2 == row:
                r2 = k
            if c2 == k:
                c2 = col
            elif c2 == col:
                c2 = k
            pivots[idx] = (c2, r2, v2)
        if val < 0:
            val = -val
            for j in range(m):
                u[k][j] = -u[k][j]
        diag.append(val)
    _fix_divisibility_chain(diag, u, v, m, n)
    s_rows = [[0] * n for _ in range(m)]
    for k, val in enumerate(diag):
        s_rows[k][k] = val
    return SnfDecomposition(
        U=IntMatrix.from_rows(u, m if m else 0),
        S=IntMatrix.from_rows(s_rows, n) if m else IntMatrix.zeros(0, n),
        V=IntMatrix.from_rows(v, n) if n else IntMatrix.zeros(n, n),
        invariant_factors=tuple(diag),
    )


def _swap_rows(mat: list[list[int]], i: int, j: int) -> None:
    if i != j:
        mat[i], mat[j] = mat[j], mat[i]


def _swap_cols(mat: list[list[int]], i: int, j: int) -> None:
    if i != j:
        for row in mat:
            row[i], row[j] = row[j], row[i]


def _fix_divisibility_chain(
    diag: list[int], u: list[list[int]], v: list[list[int]], m: int, n: int
) -> None:
    r = len(diag)
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = diag[i], diag[i + 1]
            if b % a == 0:
                continue
            changed = True
            # Work on the 2x2 block diag(a, b): col_i += col_{i+1}, then a
            # unimodular row transform makes the block diag(g, lcm).
            g, x, y = xgcd(a, b)
            for row in v:
                row[i] += row[i + 1]
            # rows i, i+1 of the working matrix: [[a, 0], [b, b]]
            # new_row_i = x*row_i + y*row_{i+1}; new_row_{i+1} = -(b/g)*row_i + (a/g)*row_{i+1}
            for j in range(m):
                ui, uj = u[i][j], u[i + 1][j]
                u[i][j] = x * ui + y * uj
                u[i + 1][j] = -(b // g) * ui + (a // g) * uj
            # Block is now [[g, y*b], [0, a*b/g]]; clear the off-diagonal entry.
            q = (y * b) // g
            for row in v:
                row[i + 1] -= q * row[i]
            diag[i], diag[i + 1] = g, (a // g) * b


# ---------------------------------------------------------------------------
# Modular linear solving
# ---------------------------------------------------------------------------


@dataclass
class Solution:
    """One particular solution plus generators of the homogeneous solution set."""

    x: tuple[int, ...]
    kernel: tuple[tuple[int, ...], ...]


class LinearSolver:
    """Repeated exact solving of A*x = b modulo the column lattice of R.

    The stacked matrix [A | R] is diagonalized once (with U tracked); each
    ``solve`` is then a cheap substitution.
    """

    def __init__(self, a_cols: Sequence[Sequence[int]], r_cols: Sequence[Sequence[int]], m: int):
        self.m = m
        self.na = len(a_cols)
        cols = list(a_cols) + list(r_cols)
        entries = [
            (i, j, v) for j, col in enumerate(cols) for i, v in enumerate(col) if v
        ]
        self.diag = sparse_diagonalize(m, len(cols), entries, track_u=True)

    def solve(self, b: Sequence[int]) -> Optional[Solution]:
        if len(b) != self.m:
            raise ValueError("dimension mismatch")
        ub = self.diag.u_apply(b)
        y: dict[int, int] = {}
        used_rows = set()
        for col, (row, val) in self.diag.pivots.items():
            used_rows.add(row)
            if ub[row] % val:
                return None
            q = ub[row] // val
            if q:
                y[col] = q
        for row in range(self.m):
            if row not in used_rows and ub[row]:
                return None
        x = self.diag.v_combination(y)
        kernel = []
        for c in range(self.diag.n):
            if c not in self.diag.pivots:
                vec = self.diag.v_combination({c: 1})[: self.na]
                if any(vec):
                    kernel.append(tuple(vec))
        return Solution(x=tuple(x[: self.na]), kernel=tuple(kernel))


def solve_modular_linear(
    a: IntMatrix, r: Optional[IntMatrix], b: Sequence[int]
) -> Optional[Solution]:
    """Solve A*x = b modulo the column lattice of R (exactly; None if unsolvable)."""
    if r is not None and r.rows != a.rows:
        raise ValueError("dimension mismatch")
    if len(b) != a.rows:
        raise ValueError("dimension mismatch")
    a_cols = [a.column(j) for j in range(a.cols)]
    r_cols = [r.column(j) for j in range(r.cols)] if r is not None else []
    return LinearSolver(a_cols, r_cols, a.rows).solve(b)
