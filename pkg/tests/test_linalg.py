"""Exact linear solving over Q(n), column-major."""

from gmpy2 import mpq

from hypertel.linalg import column_rank, solve_columns
from hypertel.poly import QPoly, QRat

from conftest import rand_qpoly, seeded

N = QPoly.var()


def _rat(num, den=1):
    return QRat(QPoly.const(num), QPoly.const(den))


def test_known_square_system():
    # [[1, n], [0, 1]] x = [n^2, 1] -> x = [0, n]... columns are the unknowns
    c0 = [_rat(1), _rat(0)]
    c1 = [QRat(N, QPoly.const(1)), _rat(1)]
    rhs = [QRat(N * N, QPoly.const(1)), QRat(N, QPoly.const(1))]
    sol = solve_columns([c0, c1], rhs)
    assert sol is not None
    assert sol[0].is_zero()
    assert sol[1] == QRat(N, QPoly.const(1))


def test_inconsistent_system():
    c0 = [_rat(1), _rat(1)]
    rhs = [_rat(1), _rat(2)]
    assert solve_columns([c0], rhs) is None


def _rand_entry(rng):
    num = rand_qpoly(rng, rng.randint(0, 2))
    den = rand_qpoly(rng, rng.randint(0, 1), nonzero=True)
    return QRat(num, den)


def test_random_consistent_systems():
    rng = seeded(77)
    for case in range(150):
        m = rng.randint(1, 4)
        rows = rng.randint(m, m + 2)
        cols = [[_rand_entry(rng) for _ in range(rows)] for _ in range(m)]
        x = [_rand_entry(rng) for _ in range(m)]
        rhs = [QRat.const(0) for _ in range(rows)]
        for j in range(m):
            for i in range(rows):
                rhs[i] = rhs[i] + cols[j][i] * x[j]
        sol = solve_columns(cols, rhs)
        assert sol is not None, f"case {case}"
        # any returned solution must reproduce the rhs exactly
        for i in range(rows):
            acc = QRat.const(0)
            for j in range(m):
                acc = acc + cols[j][i] * sol[j]
            assert acc == rhs[i], f"case {case} row {i}"


def test_random_inconsistent_systems():
    rng = seeded(78)
    found = 0
    case = 0
    while found < 60:
        case += 1
        m = rng.randint(1, 3)
        rows = m + rng.randint(1, 2)
        cols = [[_rand_entry(rng) for _ in range(rows)] for _ in range(m)]
        if column_rank(cols) < m:
            continue
        x = [_rand_entry(rng) for _ in range(m)]
        rhs = [QRat.const(0) for _ in range(rows)]
        for j in range(m):
            for i in range(rows):
                rhs[i] = rhs[i] + cols[j][i] * x[j]
        # perturb one component; with more rows than columns this almost
        # surely leaves the column span
        i0 = rng.randrange(rows)
        rhs[i0] = rhs[i0] + _rat(rng.randint(1, 5))
        sol = solve_columns(cols, rhs)
        if sol is None:
            found += 1
            continue
        # rare: still solvable; must then verify
        for i in range(rows):
            acc = QRat.const(0)
            for j in range(m):
                acc = acc + cols[j][i] * sol[j]
            assert acc == rhs[i], f"case {case} row {i}"


def test_column_rank_detects_dependence():
    rng = seeded(79)
    for case in range(80):
        rows = rng.randint(2, 5)
        c0 = [_rand_entry(rng) for _ in range(rows)]
        factor = _rand_entry(rng)
        c1 = [factor * e for e in c0]
        assert column_rank([c0, c1]) <= 1, f"case {case}"
        if any(not e.is_zero() for e in c0):
            assert column_rank([c0]) == 1
