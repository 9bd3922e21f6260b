"""Recurrences for the Taylor coefficients of compositional inverses of
rational functions.

For f in Q(x) with f(0) = 0 and f'(0) != 0, the coefficients u_n of the
inverse g (with g(f(x)) = x) are contour integrals of 1/f(u)**n, so a
telescoper for the term H**n with H = 1/f turns into a recurrence for
n*u_n.  ``series_reversion`` provides an independent oracle by direct
order-by-order substitution into f(g(x)) = x.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb
from random import Random

from gmpy2 import mpq, mpz

from .arith import squarefree_part
from .errors import NotInvertibleSeries, ReportDegenerate
from .linalg import _rank_and_pivots, _rank_mod_prime
from .poly import QPoly, QRat
from .telescoping import (HyperTerm, MixedCTResult, Telescoper,
                          _clear_operator, build_term, mixed_ct)


@dataclass(frozen=True)
class InvInstance:
    f: QRat
    p_star: int
    q_star: int


@dataclass(frozen=True)
class BenchRow:
    k: int
    order: int
    degree: int
    coeff_bits: int
    seconds: float

    def csv(self) -> str:
        return (f"{self.k},{self.order},{self.degree},{self.coeff_bits},"
                f"{self.seconds:.3f}")


CSV_HEADER = "k,order,degree,coeff_bits,seconds"


def _as_ratfn(f) -> QRat:
    if isinstance(f, QRat):
        return f
    if isinstance(f, QPoly):
        return QRat(f, QPoly.const(1))
    raise NotInvertibleSeries("f must be a rational function of x")


def inv_instance(f) -> InvInstance:
    """Validate f(0) = 0 with a simple zero, and compute the square-free
    part degrees that drive the order bound."""
    f = _as_ratfn(f)
    p, q = f.num, f.den
    if p.is_zero() or p.coeff(0) != 0 or _val0(p) != 1:
        raise NotInvertibleSeries(
            "f must vanish to order exactly 1 at x = 0")
    p_star = int(squarefree_part(p).degree)
    q_star = int(squarefree_part(q).degree) if q.degree > 0 else 0
    return InvInstance(f=f, p_star=p_star, q_star=q_star)


def _val0(p: QPoly) -> int:
    v = 0
    while p.coeff(v) == 0:
        v += 1
    return v


def inverse_coefficient_term(f) -> HyperTerm:
    """Term whose telescoper governs n*u_n: P = 1, H = 1/f, S/T = 0."""
    inst = inv_instance(f)
    return build_term(1, inst.f.inverse(), 0)


def inversion_order_bound(f) -> int:
    inst = inv_instance(f)
    return inst.q_star + inst.p_star - 1


def _shift_factor(tel: Telescoper) -> Telescoper:
    """Turn a telescoper for v_n = n*u_n into the recurrence operator for
    u_n: coefficient i picks up the factor (n + i)."""
    r = tel.order
    coeffs = []
    top = QRat(QPoly((r, 1)), QPoly.const(1))
    for i, c in enumerate(tel.coeffs):
        coeffs.append(c * QRat(QPoly((i, 1)), QPoly.const(1)) * top.inverse())
    coeffs = tuple(coeffs)
    return Telescoper(order=r, coeffs=coeffs, cleared=_clear_operator(coeffs))


def _invert_raw(f) -> MixedCTResult:
    term_inputs = inv_instance(f)
    res = mixed_ct(1, term_inputs.f.inverse(), 0, certificate=False)
    return res


def invert_recurrence(f) -> Telescoper:
    """Recurrence operator annihilating the Taylor coefficients of the
    compositional inverse of f (valid from n = 1 on)."""
    return _shift_factor(_invert_raw(f).telescoper)


def series_reversion(f, N: int):
    """First N+1 coefficients u_0..u_N of the compositional inverse of f,
    by order-by-order undetermined-coefficient substitution into
    p(g) - x*q(g) = 0.  Independent of the telescoping machinery."""
    if N < 1:
        raise NotInvertibleSeries("N must be at least 1")
    inst = inv_instance(f)
    p, q = inst.f.num, inst.f.den
    dp, dq = int(p.degree), int(q.degree)
    J = max(dp, dq)
    p1 = p.coeff(1)
    u1 = q.coeff(0) / p1
    # G[j] = g**j truncated at x**N, maintained exactly
    G = [[mpq(0)] * (N + 1) for _ in range(J + 1)]
    G[0][0] = mpq(1)
    if J >= 1:
        G[1][1] = u1
    for j in range(2, J + 1):
        if j <= N:
            G[j][j] = G[j - 1][j - 1] * u1
    pc = [p.coeff(j) for j in range(dp + 1)]
    qc = [q.coeff(j) for j in range(dq + 1)]
    for m in range(2, N + 1):
        e = mpq(0)
        for j in range(1, dp + 1):
            if pc[j]:
                e += pc[j] * G[j][m]
        for j in range(0, dq + 1):
            if qc[j]:
                e -= qc[j] * G[j][m - 1]
        um = -e / p1
        if um == 0:
            continue
        # fold g -> g + um*x**m into every maintained power, high to low so
        # lower powers are still the old ones
        lmax = N // m
        upow = [mpq(1)]
        for _ in range(lmax):
            upow.append(upow[-1] * um)
        for j in range(J, 0, -1):
            Gj = G[j]
            for l in range(1, min(j, lmax) + 1):
                c = upow[l] * comb(j, l)
                src = G[j - l]
                base = l * m
                for t in range(0, N + 1 - base):
                    if src[t]:
                        Gj[base + t] += c * src[t]
    if J >= 1:
        out = list(G[1])
    else:
        out = [mpq(0)] * (N + 1)
    return out


def check_recurrence(coeffs, tel: Telescoper, rng) -> bool:
    """Exact check that sum_i chat_i(n) * u_{n+i} = 0 for every n in the
    inclusive range ``rng`` = (n1, n2)."""
    n1, n2 = rng
    r = tel.order
    if n2 + r >= len(coeffs):
        raise NotInvertibleSeries("coefficient list too short for the range")
    for n in range(n1, n2 + 1):
        acc = mpq(0)
        for i, c in enumerate(tel.cleared):
            acc += c(n) * coeffs[n + i]
        if acc != 0:
            return False
    return True


def _draw_poly(rng: Random, deg: int, bound: int) -> QPoly:
    cs = []
    for _ in range(deg + 1):
        v = 0
        while v == 0:
            v = rng.randint(-bound, bound)
        cs.append(mpq(v))
    return QPoly(cs)


def _draw_instance(rng: Random, k: int, bound: int) -> QRat:
    for _ in range(100):
        P = _draw_poly(rng, k, bound)
        Q = _draw_poly(rng, k, bound)
        if P.gcd(P.derivative()).degree > 0:
            continue
        if P.gcd(Q).degree > 0:
            continue
        # P(0) != 0 and Q(0) != 0 hold by construction (nonzero draws)
        return QRat(P * P * QPoly((0, 1)), Q)
    raise ReportDegenerate(f"no admissible draw for k={k} in 100 attempts")


def _max_coeff_bits(cleared) -> int:
    bits = 0
    for p in cleared:
        for c in p.coeffs:
            bits = max(bits, int(abs(mpz(c.numerator))).bit_length())
    return bits


def bench_family(kmin: int, kmax: int, seed: int, coeff_bound: int = 100):
    """Benchmark rows for the family f_k = x*P_k(x)**2/Q_k(x) with dense
    random P_k, Q_k of degree k.  Every produced recurrence is validated
    against the series oracle before being reported."""
    if not (1 <= kmin <= kmax):
        raise ReportDegenerate("need 1 <= kmin <= kmax")
    rows = []
    for k in range(kmin, kmax + 1):
        rng = Random(seed * 1000003 + k)
        f = _draw_instance(rng, k, coeff_bound)
        t0 = time.perf_counter()
        raw = _invert_raw(f)
        seconds = time.perf_counter() - t0
        tel0 = raw.telescoper
        tel = _shift_factor(tel0)
        r = tel.order
        series = series_reversion(f, 5 * r + 1)
        if not check_recurrence(series, tel, (1, 3 * r)):
            raise ReportDegenerate(
                f"recurrence failed the series oracle at k={k}")
        rows.append(BenchRow(k=k, order=r, degree=tel0.degree,
                             coeff_bits=_max_coeff_bits(tel0.cleared),
                             seconds=seconds))
    return rows


def admits_lower_order_fit(series, order: int, degree: int) -> bool:
    """Could any nonzero recurrence of order ``order - 1`` with polynomial
    coefficients of degree <= ``degree`` fit the series?

    Builds the linear system over the available coefficients and checks the
    column rank exactly: full column rank on a row prefix already rules out
    a fit on the whole series."""
    r = order - 1
    if r < 0:
        return False
    ncols = (r + 1) * (degree + 1)
    rows = []
    n = 1
    while n + r < len(series) and len(rows) < ncols + 12:
        row = []
        for i in range(r + 1):
            npow = mpq(1)
            for j in range(degree + 1):
                row.append(npow * series[n + i])
                npow *= n
        rows.append(row)
        n += 1
    if len(rows) < ncols:
        raise NotInvertibleSeries("series too short for the fit test")
    # full rank modulo a prime already certifies full rank over Q; only a
    # modular rank drop forces the (much slower) exact elimination
    for p in ((1 << 61) - 1, (1 << 89) - 1):
        rank = _rank_mod_prime(rows, p)
        if rank == ncols:
            return False
        if rank is not None:
            break
    rank, _ = _rank_and_pivots(rows)
    return rank < ncols
