"""Exact-arithmetic laws: each law is checked on its documented examples and
on 1000 seeded random cases."""

import pytest
from gmpy2 import mpq

from hypertel.arith import (inv_mod, log_derivative, partial_fractions,
                            poly_xgcd, rational_roots, shift_n,
                            sqf_recompose, squarefree_decomp, squarefree_part)
from hypertel.bivar import XPoly, XRat
from hypertel.errors import DomainError, NotInvertible
from hypertel.poly import QPoly, QRat

from conftest import rand_qpoly, rand_qrat, rand_xpoly, seeded

N_CASES = 1000

X = QPoly.var()
ONE = QPoly.const(1)


# -- extended gcd -------------------------------------------------------------

def test_xgcd_documented():
    a = (X - 1) * (X + 2)
    b = (X - 1) * (X + 5)
    g, u, v = poly_xgcd(a, b)
    assert g == (X - 1).monic()
    assert u * a + v * b == g
    with pytest.raises(DomainError):
        poly_xgcd(QPoly(), QPoly())


def test_xgcd_bezout_random():
    rng = seeded(101)
    for case in range(N_CASES):
        a = rand_qpoly(rng, rng.randint(0, 6))
        b = rand_qpoly(rng, rng.randint(0, 6))
        if a.is_zero() and b.is_zero():
            continue
        g, u, v = poly_xgcd(a, b)
        assert u * a + v * b == g, f"case {case}"
        if not g.is_zero():
            assert g.lc == 1
            assert (a % g).is_zero() and (b % g).is_zero(), f"case {case}"


# -- square-free decomposition ------------------------------------------------

def test_squarefree_documented():
    p = (X - 1) ** 2 * (X + 3)
    decomp = squarefree_decomp(p.monic())
    assert decomp == [((X + 3).monic(), 1), ((X - 1).monic(), 2)]
    assert squarefree_part(p) == ((X - 1) * (X + 3)).monic()


def test_squarefree_recompose_random():
    rng = seeded(202)
    for case in range(N_CASES):
        p = rand_qpoly(rng, rng.randint(1, 4), nonzero=True)
        if rng.random() < 0.5:
            p = p * rand_qpoly(rng, rng.randint(1, 2), nonzero=True) ** 2
        p = p.monic()
        if p.degree < 1:
            continue    # draws may degenerate to a constant
        decomp = squarefree_decomp(p)
        q = sqf_recompose(decomp)
        assert q is not None and q.monic() == p, f"case {case}"
        mults = [m for _, m in decomp]
        assert mults == sorted(mults) and len(set(mults)) == len(mults)
        for i, (f, _) in enumerate(decomp):
            assert f.gcd(f.derivative()).degree == 0, f"case {case}"
            for g, _ in decomp[i + 1:]:
                assert f.gcd(g).degree == 0, f"case {case}"


# -- partial fractions --------------------------------------------------------

def _recombine(U, parts):
    total = QRat(U, ONE)
    for uk, g, k in parts:
        total = total + QRat(uk, g ** k)
    return total


def test_partial_fractions_documented():
    F = QRat(ONE, X * (X - 1))
    U, parts = partial_fractions(F)
    assert U.is_zero()
    # refine=True splits at the rational roots
    assert sorted(str(g) for _, g, _ in parts) == \
        sorted([str(X.monic()), str((X - 1).monic())])
    assert _recombine(U, parts) == F


def test_partial_fractions_random():
    rng = seeded(303)
    for case in range(N_CASES):
        F = rand_qrat(rng, rng.randint(0, 5), rng.randint(1, 3),
                      nonzero=True)
        if rng.random() < 0.4:
            extra = rand_qpoly(rng, 1, nonzero=True)
            F = F * QRat(ONE, extra ** 2)
        refine = bool(rng.getrandbits(1))
        U, parts = partial_fractions(F, refine=refine)
        assert _recombine(U, parts) == F, f"case {case}"
        for uk, g, k in parts:
            assert not uk.is_zero()
            assert uk.degree < (g ** k).degree, f"case {case}"


# -- modular inverse ----------------------------------------------------------

def test_inv_mod_documented():
    m = X ** 2 + ONE
    a = X + 1
    u = inv_mod(a, m)
    assert (u * a) % m == ONE
    with pytest.raises(NotInvertible):
        inv_mod(X - 2, (X - 2) * (X + 1))


def test_inv_mod_random():
    rng = seeded(404)
    done = 0
    case = 0
    while done < N_CASES:
        case += 1
        m = rand_qpoly(rng, rng.randint(1, 6), nonzero=True).monic()
        a = rand_qpoly(rng, rng.randint(0, 6))
        if a.is_zero() or m.degree < 1:
            continue
        g = a.gcd(m)
        if g.degree > 0:
            with pytest.raises(NotInvertible):
                inv_mod(a, m)
        else:
            u = inv_mod(a, m)
            assert (u * a) % m == ONE, f"case {case}"
            assert u.degree < m.degree
        done += 1


# -- shift in n ---------------------------------------------------------------

def test_shift_n_documented():
    n = QPoly.var()
    c = QRat(n * n + QPoly.const(1), n - QPoly.const(3))
    assert shift_n(shift_n(c, 5), -5) == c
    p = XPoly((n, QPoly.const(1)))  # n + x
    assert shift_n(p, 2) == XPoly((n + QPoly.const(2), QPoly.const(1)))


def test_shift_n_involution_random():
    rng = seeded(505)
    for case in range(N_CASES):
        i = rng.randint(-6, 6)
        kind = rng.randint(0, 2)
        if kind == 0:
            v = rand_qrat(rng, rng.randint(0, 4), rng.randint(0, 3),
                          nonzero=True)
        elif kind == 1:
            v = rand_xpoly(rng, rng.randint(0, 3), nonzero=True)
        else:
            v = XRat(rand_xpoly(rng, rng.randint(0, 2), nonzero=True),
                     rand_xpoly(rng, rng.randint(0, 2), nonzero=True))
        assert shift_n(shift_n(v, i), -i) == v, f"case {case}"


# -- misc helpers used throughout ---------------------------------------------

def test_log_derivative_and_roots():
    H = QRat((X - 1) ** 2, X + 2)
    ld = log_derivative(H)
    # H'/H = 2/(x-1) - 1/(x+2)
    assert ld == QRat(QPoly.const(2), X - 1) - QRat(ONE, X + 2)
    p = (X - 1) * (2 * X - 3) * (X ** 2 + 1)
    assert sorted(rational_roots(p)) == [mpq(1), mpq(3, 2)]
