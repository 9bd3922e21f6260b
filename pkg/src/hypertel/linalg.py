"""Exact linear algebra over Q(n), tuned for the telescoping solver.

The main entry point is :func:`solve_columns`: given columns and a right
hand side with entries in Q(n), find rational-function coefficients
expressing the right hand side in the column span, or certify that none
exist.  The fast path clears denominators, picks pivot rows by evaluating
at an integer point, recovers the unique candidate solution by evaluation
and interpolation (Cramer), and then verifies it symbolically, which makes
the answer exact.  Degenerate systems fall back to fraction-free (Bareiss)
elimination.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import DomainError
from .poly import QPoly, QRat, interpolate


def _lcm_dens(entries) -> QPoly:
    d = QPoly.const(1)
    for e in entries:
        d = d.lcm(e.den)
    return d


def _clear_columns(cols, rhs):
    """Clear denominators column by column.

    Returns (A, b, col_dens, rhs_den) with A a row-major QPoly matrix such
    that the original system sum_j c_j cols[j] = rhs is equivalent to
    A y = b with c_j = y_j * col_dens[j] / rhs_den."""
    m = len(cols)
    rows = len(rhs)
    col_dens = []
    cleared = []
    for col in cols:
        d = _lcm_dens(col)
        col_dens.append(d)
        cleared.append([e.num * d.exact_div(e.den) for e in col])
    d_b = _lcm_dens(rhs)
    b = [e.num * d_b.exact_div(e.den) for e in rhs]
    A = [[cleared[j][r] for j in range(m)] for r in range(rows)]
    return A, b, col_dens, d_b


def _eval_matrix(A, n0):
    return [[e(n0) for e in row] for row in A]


def _rank_and_pivots(M):
    """Rank of an mpq matrix via Gaussian elimination; returns (rank,
    pivot_row_indices) where the pivot rows are independent."""
    rows = [list(r) for r in M]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    piv_rows = []
    used = [False] * nrows
    col = 0
    for col in range(ncols):
        sel = -1
        for r in range(nrows):
            if not used[r] and rows[r][col] != 0:
                sel = r
                break
        if sel < 0:
            continue
        used[sel] = True
        piv_rows.append(sel)
        inv = 1 / rows[sel][col]
        for r in range(nrows):
            if r != sel and rows[r][col] != 0:
                f = rows[r][col] * inv
                rr, rs = rows[r], rows[sel]
                for c in range(col, ncols):
                    rr[c] -= f * rs[c]
    return len(piv_rows), piv_rows


def _rank_mod_prime(M, p):
    """Rank of an mpq matrix reduced modulo the prime p, or None when a
    denominator is divisible by p.  Always a lower bound for the exact
    rank, so full rank mod p certifies full rank over Q."""
    rows = []
    for r in M:
        row = []
        for e in r:
            den = int(e.denominator) % p
            if den == 0:
                return None
            row.append(int(e.numerator) % p * pow(den, p - 2, p) % p)
        rows.append(row)
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    used = [False] * nrows
    for col in range(ncols):
        sel = -1
        for r in range(nrows):
            if not used[r] and rows[r][col]:
                sel = r
                break
        if sel < 0:
            continue
        used[sel] = True
        rank += 1
        inv = pow(rows[sel][col], p - 2, p)
        rs = rows[sel]
        for r in range(nrows):
            if r != sel and rows[r][col]:
                f = rows[r][col] * inv % p
                rr = rows[r]
                for c in range(col, ncols):
                    rr[c] = (rr[c] - f * rs[c]) % p
    return rank


def _solve_square_point(M, v):
    """Solve a square mpq system; returns (solution, det) or (None, 0) when
    the matrix is singular at this point."""
    m = len(M)
    aug = [list(M[r]) + [v[r]] for r in range(m)]
    det = mpq(1)
    for col in range(m):
        sel = -1
        for r in range(col, m):
            if aug[r][col] != 0:
                sel = r
                break
        if sel < 0:
            return None, mpq(0)
        if sel != col:
            aug[col], aug[sel] = aug[sel], aug[col]
            det = -det
        det *= aug[col][col]
        inv = 1 / aug[col][col]
        for r in range(m):
            if r != col and aug[r][col] != 0:
                f = aug[r][col] * inv
                for c in range(col, m + 1):
                    aug[r][c] -= f * aug[col][c]
    sol = [aug[r][m] / aug[r][r] for r in range(m)]
    return sol, det


def _verify_poly_solution(A, b, nums, den) -> bool:
    """Exact check of sum_j nums[j]*A[r][j] = den*b[r] for every row r."""
    for r, row in enumerate(A):
        acc = QPoly()
        for j, e in enumerate(row):
            if not e.is_zero() and not nums[j].is_zero():
                acc = acc + nums[j] * e
        if not (acc - den * b[r]).is_zero():
            return False
    return True


def _cramer_interpolated(A, b, piv):
    """Candidate solution of the full system from the pivot-row subsystem,
    by evaluation and interpolation.  Returns (nums, den) as QPoly with
    c_j = nums[j]/den, or None when the pivot submatrix is singular."""
    m = len(A[0])
    sub = [A[r] for r in piv]
    vb = [b[r] for r in piv]
    col_deg = []
    for j in range(m):
        dj = max((int(sub[r][j].degree) for r in range(m)
                  if not sub[r][j].is_zero()), default=0)
        col_deg.append(dj)
    deg_b = max((int(v.degree) for v in vb if not v.is_zero()), default=0)
    D = sum(col_deg) + deg_b
    pts, dets, sols = [], [], []
    n0 = 7
    while len(pts) <= D:
        n0 += 1
        M = _eval_matrix(sub, n0)
        v = [e(n0) for e in vb]
        sol, det = _solve_square_point(M, v)
        if det == 0:
            if n0 > 10 * (D + 2) + 100:
                return None
            continue
        pts.append(mpq(n0))
        dets.append(det)
        sols.append(sol)
    den = interpolate(pts, dets)
    nums = []
    for j in range(m):
        nums.append(interpolate(pts, [sols[t][j] * dets[t]
                                      for t in range(len(pts))]))
    return nums, den


def _bareiss_solve(A, b):
    """Fraction-free elimination on the augmented system.  Returns (nums,
    den) like the fast path, or None when the system is inconsistent."""
    m = len(A[0])
    aug = [list(A[r]) + [b[r]] for r in range(len(A))]
    nrows = len(aug)
    prev = QPoly.const(1)
    piv_of_col = []
    row = 0
    for col in range(m):
        sel = -1
        for r in range(row, nrows):
            if not aug[r][col].is_zero():
                sel = r
                break
        if sel < 0:
            piv_of_col.append(-1)
            continue
        if sel != row:
            aug[row], aug[sel] = aug[sel], aug[row]
        p = aug[row][col]
        for r in range(row + 1, nrows):
            f = aug[r][col]
            for c in range(m + 1):
                aug[r][c] = (p * aug[r][c] - f * aug[row][c]).exact_div(prev)
        prev = p
        piv_of_col.append(row)
        row += 1
    # inconsistency: a zero row of A with nonzero right hand side
    for r in range(nrows):
        if all(aug[r][c].is_zero() for c in range(m)) \
                and not aug[r][m].is_zero():
            return None
    nums = [QPoly() for _ in range(m)]
    den = QPoly.const(1)
    sols = {}
    for col in range(m - 1, -1, -1):
        r = piv_of_col[col]
        if r < 0:
            sols[col] = QRat.const(0)
            continue
        acc = QRat(aug[r][m], QPoly.const(1))
        for c in range(col + 1, m):
            if not aug[r][c].is_zero():
                acc = acc - QRat(aug[r][c], QPoly.const(1)) * sols[c]
        sols[col] = acc * QRat(QPoly.const(1), aug[r][col])
    for col in range(m):
        den = den.lcm(sols[col].den)
    for col in range(m):
        nums[col] = sols[col].num * den.exact_div(sols[col].den)
    if not _verify_poly_solution(A, b, nums, den):
        return None
    return nums, den


def solve_columns(cols, rhs):
    """Express ``rhs`` in the span of ``cols`` over Q(n).

    Both are given as lists of QRat entries (all the same length).  Returns
    the coefficient list [c_0, ...] as QRat, or None when no rational
    function solution exists.  The answer is exact in both directions."""
    m = len(cols)
    if m == 0:
        return [] if all(e.is_zero() for e in rhs) else None
    A, b, col_dens, d_b = _clear_columns(cols, rhs)
    res = None
    # pick an evaluation point where the matrix attains full column rank
    for n0 in (19, 20, 23, 29, 31):
        Mp = _eval_matrix(A, n0)
        bp = [e(n0) for e in b]
        aug_rank, _ = _rank_and_pivots(
            [Mp[r] + [bp[r]] for r in range(len(Mp))])
        if aug_rank > m:
            # the symbolic rank of A is at most the column count m, so an
            # augmented rank above m at any point certifies inconsistency
            return None
        rank, piv = _rank_and_pivots(Mp)
        if rank == m:
            cand = _cramer_interpolated(A, b, piv)
            if cand is not None:
                nums, den = cand
                if _verify_poly_solution(A, b, nums, den):
                    res = (nums, den)
                # full column rank makes the pivot subsystem solution the
                # only candidate: a failed check certifies inconsistency
                elif not den.is_zero():
                    return None
            break
    if res is None:
        res = _bareiss_solve(A, b)
    if res is None:
        return None
    nums, den = res
    out = []
    for j in range(m):
        out.append(QRat(nums[j] * col_dens[j], den * d_b))
    return out


def column_rank(cols) -> int:
    """Exact rank of a column family over Q(n).

    Evaluation at a point only underestimates the rank, so the maximum over
    a few points that reaches full rank is exact; otherwise fraction-free
    elimination settles it."""
    m = len(cols)
    if m == 0:
        return 0
    A, _, _, _ = _clear_columns(cols, [QRat.const(0)] * len(cols[0]))
    best = 0
    for n0 in (19, 23, 29, 31, 37):
        rank, _ = _rank_and_pivots(_eval_matrix(A, n0))
        best = max(best, rank)
        if best == m:
            return m
    # settle exactly
    aug = [list(row) for row in A]
    nrows = len(aug)
    prev = QPoly.const(1)
    row = 0
    for col in range(m):
        sel = -1
        for r in range(row, nrows):
            if not aug[r][col].is_zero():
                sel = r
                break
        if sel < 0:
            continue
        if sel != row:
            aug[row], aug[sel] = aug[sel], aug[row]
        p = aug[row][col]
        for r in range(row + 1, nrows):
            f = aug[r][col]
            for c in range(m):
                aug[r][c] = (p * aug[r][c] - f * aug[row][c]).exact_div(prev)
        prev = p
        row += 1
    return row
