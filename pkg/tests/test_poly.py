"""Dense univariate polynomials and rational functions over Q."""

import pytest
from gmpy2 import mpq

from hypertel.errors import DomainError
from hypertel.poly import QPoly, QRat, interpolate

from conftest import rand_qpoly, seeded

X = QPoly.var()
ONE = QPoly.const(1)


def test_basic_ring_ops():
    p = X ** 2 - 3 * X + 2
    q = X - 1
    assert p == (X - 1) * (X - 2)
    d, r = divmod(p, q)
    assert d == X - 2 and r.is_zero()
    assert p % (X - 2) == QPoly()
    assert (p * q).degree == 3
    assert p(mpq(1)) == 0 and p(mpq(3)) == 2


def test_divmod_rejects_zero():
    with pytest.raises(DomainError):
        divmod(X, QPoly())


def test_derivative_and_shift():
    p = X ** 3 + 2 * X
    assert p.derivative() == 3 * X ** 2 + 2
    assert p.taylor_shift(1)(mpq(0)) == p(mpq(1))


def test_gcd_divides_both():
    rng = seeded(11)
    for case in range(400):
        c = rand_qpoly(rng, rng.randint(0, 3), nonzero=True)
        a = rand_qpoly(rng, rng.randint(0, 4), nonzero=True)
        b = rand_qpoly(rng, rng.randint(0, 4), nonzero=True)
        g = (a * c).gcd(b * c)
        assert ((a * c) % g).is_zero() and ((b * c) % g).is_zero(), \
            f"case {case}"


def test_gcd_contains_planted_factor():
    rng = seeded(12)
    for case in range(400):
        c = rand_qpoly(rng, rng.randint(1, 3), nonzero=True).monic()
        a = rand_qpoly(rng, rng.randint(0, 4), nonzero=True)
        b = rand_qpoly(rng, rng.randint(0, 4), nonzero=True)
        g = (a * c).gcd(b * c)
        # the planted factor always divides the gcd
        assert (g % c).is_zero(), f"case {case}"


def test_multiplication_large_matches_schoolbook():
    rng = seeded(13)
    for case in range(60):
        a = rand_qpoly(rng, rng.randint(8, 20), bound=10 ** 6, nonzero=True)
        b = rand_qpoly(rng, rng.randint(8, 20), bound=10 ** 6, nonzero=True)
        prod = a * b
        # check against direct convolution
        out = [mpq(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, ai in enumerate(a.coeffs):
            for j, bj in enumerate(b.coeffs):
                out[i + j] += ai * bj
        assert prod == QPoly(out), f"case {case}"


def test_interpolate_round_trip():
    rng = seeded(14)
    for case in range(200):
        p = rand_qpoly(rng, rng.randint(0, 6), nonzero=True)
        pts = [mpq(i) for i in range(int(p.degree) + 1)]
        q = interpolate(pts, [p(t) for t in pts])
        assert q == p, f"case {case}"


def test_qrat_reduction_and_ops():
    F = QRat((X - 1) * (X + 2), (X - 1) * X)
    assert F == QRat(X + 2, X)
    assert F.den.lc == 1
    G = F * F.inverse()
    assert G == QRat.const(1)
    assert (F - F).is_zero()
    d = QRat(ONE, X).derivative()
    assert d == QRat(QPoly.const(-1), X ** 2)
    with pytest.raises(DomainError):
        QRat(ONE, QPoly())
