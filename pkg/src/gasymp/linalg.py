"""Exact linear algebra over the rationals (dense and sparse rows)."""

from __future__ import annotations

from fractions import Fraction


def rref(rows: list) -> tuple:
    """Reduced row echelon form of a dense Fraction matrix (copied).

    Returns (matrix, pivot_columns).
    """
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank(rows: list) -> int:
    return len(rref(rows)[1])


def solve(rows: list, rhs: list) -> tuple:
    """Solve A x = b exactly.

    Returns (particular_solution, nullspace_basis) or (None, nullspace_basis)
    when inconsistent.  Free variables are set to zero in the particular
    solution.
    """
    if not rows:
        return [], []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    mat, pivots = rref(aug)
    for row in mat:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None, nullspace(rows)
    sol = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        if c < ncols:
            sol[c] = mat[r][-1]
    return sol, nullspace(rows)


def nullspace(rows: list) -> list:
    """Basis of the right kernel of a dense Fraction matrix."""
    if not rows:
        return []
    ncols = len(rows[0])
    mat, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -mat[r][fc]
        basis.append(v)
    return basis


class SparseEchelon:
    """Incrementally built reduced echelon basis of sparse Fraction rows.

    Rows are dicts column -> nonzero Fraction.  Supports span membership,
    dimension queries, and residual extraction.
    """

    def __init__(self):
        self.rows = {}  # pivot column -> reduced row (dict)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        while row:
            p = min(row)
            if p not in self.rows:
                return row
            base = self.rows[p]
            f = row[p]
            for c, v in base.items():
                s = row.get(c, 0) - f * v
                if s:
                    row[c] = s
                elif c in row:
                    del row[c]
        return row

    def insert(self, row: dict) -> bool:
        """Reduce and insert; returns True if the row enlarged the span."""
        res = self.reduce(row)
        if not res:
            return False
        p = min(res)
        inv = Fraction(1) / res[p]
        res = {c: v * inv for c, v in res.items()}
        for q, other in self.rows.items():
            f = other.get(p)
            if f:
                for c, v in res.items():
                    s = other.get(c, 0) - f * v
                    if s:
                        other[c] = s
                    elif c in other:
                        del other[c]
        self.rows[p] = res
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)


def sparse_nullspace(equations: list, ncols: int) -> list:
    """Right kernel basis for a system of sparse equation rows over unknowns
    0..ncols-1.  Returns sparse solution vectors (dicts)."""
    ech = SparseEchelon()
    for eq in equations:
        ech.insert(eq)
    pivots = set(ech.rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = {free: Fraction(1)}
        for p, row in ech.rows.items():
            coeff = row.get(free)
            if coeff:
                v[p] = -coeff
        basis.append(v)
    return basis
