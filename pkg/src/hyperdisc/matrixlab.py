"""Exact integer and rational matrix utilities.

Covers the determinant of the v-matrix used by the main construction and
the quantities attached to 0/1 matrices ``M`` whose system ``Mx = e`` has a
unique nonnegative solution: that solution ``x^M``, the least integer
``z(M)`` clearing its denominators, and ``t(n)``, the fewest rows of such a
matrix with ``z(M) = n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import lcm
from typing import Optional, Sequence

import numpy as np

from .builder import build_vectors
from .errors import Inconsistent, InvalidInput, NotSquare, NotZeroOne, ParseError, TooLarge
from .numtheory import eta_decompose

MEMBERSHIP_MAX_COLS = 12
T_SEARCH_MAX_N = 4
T_SEARCH_MAX_ROWS = 5


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]  # row-major

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InvalidInput(f"matrix dimensions must be positive, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise InvalidInput("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise InvalidInput("ragged matrix rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]


def identity(k: int) -> IntMatrix:
    return IntMatrix.from_rows([[int(i == j) for j in range(k)] for i in range(k)])


def ones_minus_identity(k: int) -> IntMatrix:
    """``J_k - I_k``."""
    return IntMatrix.from_rows([[int(i != j) for j in range(k)] for i in range(k)])


def exact_det(M: IntMatrix) -> int:
    """Bareiss fraction-free elimination; every intermediate stays integral."""
    if M.rows != M.cols:
        raise NotSquare(f"determinant needs a square matrix, got {M.rows}x{M.cols}")
    n = M.rows
    a = M.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def v_matrix(q: int) -> IntMatrix:
    return IntMatrix.from_rows(build_vectors(eta_decompose(q)).v)


def verify_v_matrix(q: int) -> bool:
    """``|det| = q`` and ``<v_i, (1, 2, ..., 2^(m-1))> = q`` for every row."""
    if q < 3:
        raise InvalidInput(f"q must be >= 3, got {q}")
    vf = build_vectors(eta_decompose(q))
    return abs(exact_det(IntMatrix.from_rows(vf.v))) == q and all(s == q for s in vf.dots())


def _rref(rows: list[list[Fraction]], ncols: int):
    """In-place Gauss-Jordan on the first ``ncols`` columns; returns pivot columns."""
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots


@dataclass(frozen=True)
class AffineSolution:
    """Solution set of ``Mx = e``: a point when ``dimension == 0``."""

    point: Optional[tuple[Fraction, ...]]
    dimension: int


def _solve(columns: Sequence[Sequence[int]], nrows: int, rhs: Sequence[int]):
    """Solve for a combination of the given columns; None if inconsistent."""
    c = len(columns)
    rows = [[Fraction(columns[j][i]) for j in range(c)] + [Fraction(rhs[i])] for i in range(nrows)]
    pivots = _rref(rows, c)
    if any(all(x == 0 for x in row[:c]) and row[c] != 0 for row in rows):
        return None
    x = [Fraction(0)] * c
    for i, col in enumerate(pivots):
        x[col] = rows[i][c]
    return tuple(x), len(pivots)


def _columns(M: IntMatrix) -> list[tuple[int, ...]]:
    return [tuple(M.entries[i * M.cols + j] for i in range(M.rows)) for j in range(M.cols)]


def solve_Mx_e(M: IntMatrix) -> AffineSolution:
    solved = _solve(_columns(M), M.rows, [1] * M.rows)
    if solved is None:
        raise Inconsistent("Mx = e has no solution")
    x, rank = solved
    if rank == M.cols:
        return AffineSolution(x, 0)
    return AffineSolution(None, M.cols - rank)


def _basic_nonnegative_solutions(columns, nrows, rhs, max_size):
    """Distinct nonnegative basic solutions (vertices) of ``{x >= 0: Ax = rhs}``."""
    found = set()
    ncols = len(columns)
    for size in range(0, max_size + 1):
        for S in combinations(range(ncols), size):
            if size == 0:
                if all(b == 0 for b in rhs):
                    found.add((Fraction(0),) * ncols)
                continue
            solved = _solve([columns[j] for j in S], nrows, rhs)
            if solved is None or solved[1] < size:
                continue
            xs, _ = solved
            if any(v < 0 for v in xs):
                continue
            full = [Fraction(0)] * ncols
            for j, v in zip(S, xs):
                full[j] = v
            found.add(tuple(full))
    return found


@dataclass(frozen=True)
class Membership:
    member: bool
    x: Optional[tuple[Fraction, ...]] = None
    z: Optional[int] = None
    y: Optional[tuple[int, ...]] = None


def m_membership(M: IntMatrix) -> Membership:
    """Decide whether ``{x >= 0 : Mx = e}`` is a single point.

    The polyhedron is a point iff it has exactly one vertex and no recession
    direction; both are found by enumerating basic solutions, the latter on
    ``{y >= 0 : My = 0, sum(y) = 1}``.
    """
    if any(v not in (0, 1) for v in M.entries):
        raise NotZeroOne("membership is defined for 0/1 matrices")
    if M.cols > MEMBERSHIP_MAX_COLS:
        raise TooLarge(f"membership test is capped at {MEMBERSHIP_MAX_COLS} columns, got {M.cols}")
    cols = _columns(M)
    max_size = min(M.rows, M.cols)
    vertices = _basic_nonnegative_solutions(cols, M.rows, [1] * M.rows, max_size)
    if len(vertices) != 1:
        return Membership(False)
    cone_cols = [c + (1,) for c in cols]
    rays = _basic_nonnegative_solutions(cone_cols, M.rows + 1, [0] * M.rows + [1], min(M.rows + 1, M.cols))
    if rays:
        return Membership(False)
    (x,) = vertices
    z = lcm(*(v.denominator for v in x))
    return Membership(True, x, z, tuple(int(v * z) for v in x))


def is_in_M(M: IntMatrix) -> bool:
    return m_membership(M).member


def z_of(M: IntMatrix) -> int:
    res = m_membership(M)
    if not res.member:
        raise InvalidInput("matrix does not have a unique nonnegative solution of Mx = e")
    return res.z


def t_search(n: int, max_rows: int) -> Optional[IntMatrix]:
    """Fewest-row 0/1 matrix with a unique nonnegative solution and ``z(M) = n``.

    Columns carrying a zero in the solution never change ``z``, and a
    strictly positive unique solution forces linearly independent columns,
    so it suffices to try sets of distinct nonzero columns, at most one per
    row.  Among minimal witnesses the lexicographically smallest (row-major,
    columns sorted) is returned.
    """
    if n < 1:
        raise InvalidInput(f"n must be positive, got {n}")
    if n > T_SEARCH_MAX_N or max_rows > T_SEARCH_MAX_ROWS:
        raise TooLarge(f"t_search is capped at n <= {T_SEARCH_MAX_N}, max_rows <= {T_SEARCH_MAX_ROWS}")
    for r in range(1, max_rows + 1):
        vectors = sorted(v for v in product((0, 1), repeat=r) if any(v))
        best = None
        for c in range(1, r + 1):
            # denominators of x divide the determinant of a nonsingular c x c subsystem
            if MAX_01_DET[c] < n:
                continue
            for S in _candidate_column_sets(vectors, r, c, n):
                solved = _solve(S, r, [1] * r)
                if solved is None or solved[1] < c:
                    continue
                x, _ = solved
                if any(v <= 0 for v in x):
                    continue
                if lcm(*(v.denominator for v in x)) != n:
                    continue
                cand = tuple(S[j][i] for i in range(r) for j in range(c))
                if best is None or (c, cand) < best[:2]:
                    best = (c, cand, IntMatrix(r, c, cand))
        if best is not None:
            return best[2]
    return None


# largest determinant of a k x k 0/1 matrix, k = 0..5
MAX_01_DET = (1, 1, 1, 2, 3, 5)


def _candidate_column_sets(vectors, r, c, n):
    if c < r:
        yield from combinations(vectors, c)
        return
    # square: screen by floating determinant, exact check follows
    combos = np.array(list(combinations(range(len(vectors)), c)), dtype=np.intp)
    mats = np.array(vectors, dtype=float)[combos].transpose(0, 2, 1)
    dets = np.rint(np.linalg.det(mats)).astype(np.int64)
    keep = (dets != 0) & (dets % n == 0)
    for idx in combos[keep]:
        yield tuple(vectors[i] for i in idx)


def write_matrix(M: IntMatrix) -> str:
    lines = [f"M {M.rows} {M.cols}"] + [" ".join(map(str, M.row(i))) for i in range(M.rows)]
    return "\n".join(lines) + "\n"


def read_matrix(text: str) -> IntMatrix:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty matrix file", 1)
    head = lines[0].split()
    if len(head) != 3 or head[0] != "M":
        raise ParseError(f"expected 'M <rows> <cols>', got {lines[0]!r}", 1)
    try:
        r, c = int(head[1]), int(head[2])
    except ValueError:
        raise ParseError(f"bad dimensions in {lines[0]!r}", 1) from None
    if r < 1 or c < 1:
        raise ParseError("dimensions must be positive", 1)
    if len(lines) - 1 != r:
        # first missing line, or first surplus line
        bad = len(lines) + 1 if len(lines) - 1 < r else r + 2
        raise ParseError(f"header declares {r} rows, file has {len(lines) - 1}", bad)
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        try:
            vals = [int(t) for t in line.split()]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", i) from None
        if len(vals) != c:
            raise ParseError(f"expected {c} entries, got {len(vals)}", i)
        rows.append(vals)
    return IntMatrix.from_rows(rows)
