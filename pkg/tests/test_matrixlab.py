import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from scipy.optimize import linprog

from hyperdisc.acceptance import cofactor_det
from hyperdisc.errors import Inconsistent, NotSquare, NotZeroOne, ParseError, TooLarge
from hyperdisc.matrixlab import (
    IntMatrix,
    exact_det,
    identity,
    is_in_M,
    m_membership,
    ones_minus_identity,
    read_matrix,
    solve_Mx_e,
    t_search,
    v_matrix,
    verify_v_matrix,
    write_matrix,
    z_of,
)


def test_det_examples():
    assert exact_det(identity(3)) == 1
    assert exact_det(IntMatrix.from_rows([[3, 5], [1, 8]])) == 19
    assert exact_det(v_matrix(19)) == -19 == cofactor_det(v_matrix(19).to_rows())
    assert exact_det(IntMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert exact_det(IntMatrix.from_rows([[1, 2], [2, 4]])) == 0


def test_det_not_square():
    with pytest.raises(NotSquare):
        exact_det(IntMatrix.from_rows([[1, 2, 3]]))


def test_det_matches_cofactor_expansion():
    rng = random.Random(5)
    for _ in range(500):
        k = rng.randint(1, 4)
        rows = [[rng.randint(-5, 5) for _ in range(k)] for _ in range(k)]
        assert exact_det(IntMatrix.from_rows(rows)) == cofactor_det(rows)


@pytest.mark.parametrize("q, det", [(3, -3), (8, 8), (19, -19)])
def test_v_matrix_small(q, det):
    assert exact_det(v_matrix(q)) == det == cofactor_det(v_matrix(q).to_rows())
    assert verify_v_matrix(q)


def test_verify_v_matrix_range():
    assert all(verify_v_matrix(q) for q in range(3, 65))


def test_solve_Mx_e():
    assert solve_Mx_e(identity(2)).point == (1, 1)
    half = Fraction(1, 2)
    assert solve_Mx_e(ones_minus_identity(3)).point == (half, half, half)
    sol = solve_Mx_e(IntMatrix.from_rows([[1, 1]]))
    assert sol.point is None and sol.dimension == 1
    with pytest.raises(Inconsistent):
        solve_Mx_e(IntMatrix.from_rows([[1, 1], [0, 0]]))


def test_membership_examples():
    res = m_membership(identity(3))
    assert res.member and res.z == 1 and res.y == (1, 1, 1)
    res = m_membership(ones_minus_identity(4))
    assert res.member and res.z == 3 and res.y == (1, 1, 1, 1)
    assert not is_in_M(IntMatrix.from_rows([[1, 1]]))


def test_membership_errors():
    with pytest.raises(NotZeroOne):
        is_in_M(IntMatrix.from_rows([[2]]))
    with pytest.raises(TooLarge):
        is_in_M(IntMatrix.from_rows([[1] * 13]))


@pytest.mark.parametrize("n", range(1, 7))
def test_z_of_ones_minus_identity(n):
    assert z_of(ones_minus_identity(n + 1)) == n


def unique_by_lp(rows):
    """Unique nonnegative solution of Mx = e via coordinatewise min/max LPs."""
    A = np.array(rows, dtype=float)
    m, c = A.shape
    b = np.ones(m)
    probe = linprog(np.zeros(c), A_eq=A, b_eq=b, bounds=[(0, None)] * c, method="highs")
    if probe.status != 0:
        return False
    for j in range(c):
        cost = np.zeros(c)
        cost[j] = 1
        lo = linprog(cost, A_eq=A, b_eq=b, bounds=[(0, None)] * c, method="highs")
        hi = linprog(-cost, A_eq=A, b_eq=b, bounds=[(0, None)] * c, method="highs")
        if hi.status != 0 or abs(lo.fun + hi.fun) > 1e-7:
            return False
    return True


def test_membership_matches_lp_oracle():
    rng = random.Random(17)
    members = 0
    for _ in range(300):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        rows = [[rng.randint(0, 1) for _ in range(c)] for _ in range(r)]
        res = m_membership(IntMatrix.from_rows(rows))
        assert res.member == unique_by_lp(rows), rows
        if res.member:
            members += 1
            x = res.x
            assert all(v >= 0 for v in x)
            assert all(sum(a * v for a, v in zip(row, x)) == 1 for row in rows)
            assert all((res.z * v).denominator == 1 for v in x)
            for p in (2, 3, 5, 7):
                if res.z % p == 0:
                    assert any(((res.z // p) * v).denominator != 1 for v in x)
    assert members > 20


@pytest.mark.parametrize("n, rows", [(1, 1), (2, 3), (3, 4), (4, 5)])
def test_t_search_minimum_rows(n, rows):
    M = t_search(n, 5)
    assert M.rows == rows
    assert z_of(M) == n


def test_t_search_witnesses():
    assert t_search(1, 5).to_rows() == [[1]]
    assert t_search(2, 5).to_rows() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]


def test_t_search_lower_bounds_by_full_enumeration():
    """No 0/1 matrix with <= n rows (and <= 4 columns) reaches z = n for n = 2, 3."""
    for n in (2, 3):
        for r in range(1, n + 1):
            for c in range(1, 5):
                for entries in product((0, 1), repeat=r * c):
                    res = m_membership(IntMatrix(r, c, entries))
                    assert not (res.member and res.z == n)


def test_t_search_absent_within_cap():
    assert t_search(3, 3) is None


def test_t_search_caps():
    with pytest.raises(TooLarge):
        t_search(5, 5)
    with pytest.raises(TooLarge):
        t_search(2, 6)


def test_matrix_text_round_trip():
    M = IntMatrix.from_rows([[3, 5], [1, 8]])
    text = write_matrix(M)
    assert text == "M 2 2\n3 5\n1 8\n"
    assert read_matrix(text) == M


@pytest.mark.parametrize("text, line", [("X 2 2\n", 1), ("M 2 2\n1 2\n", 3), ("M 1 2\n1\n", 2), ("M 1 1\nz\n", 2)])
def test_matrix_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        read_matrix(text)
    assert exc.value.line == line
