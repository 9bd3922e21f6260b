"""MixedCT driver: frozen small examples, minimality normalization, the
hypergeometric-factor post-step and a quick pass of the telescoper suite."""

import pytest
from gmpy2 import mpq

from hypertel.bivar import XPoly, XRat
from hypertel.errors import InvalidInputForm
from hypertel.expr import format_expr
from hypertel.poly import QPoly, QRat
from hypertel.telescoping import (apply_hypergeometric_factor, build_term,
                                  ensure_minimal, mixed_ct, order_bound,
                                  telescoper_degree_bound, verify_telescoper)

import suites

x = QPoly.var()
one = QPoly.const(1)


def test_x_pow_n_exp_x():
    # P = 1, H = x, S/T = 1
    res = mixed_ct(1, QRat(x, one), 1, certificate=True)
    tel = res.telescoper
    assert tel.order == 1
    assert tuple(format_expr(c, var="n") for c in tel.cleared) == ("n+1", "1")
    assert format_expr(res.certificate.Q) == "x"
    term = build_term(1, QRat(x, one), 1)
    assert verify_telescoper(term, tel, res.certificate)
    assert tel.degree <= telescoper_degree_bound(term, tel.order)


def test_inverse_power_order_zero():
    # P = 1, H = 1/(x-1): the term already telescopes at order 0
    res = mixed_ct(1, QRat(one, x - one), 0, certificate=True)
    tel = res.telescoper
    assert tel.order == 0
    assert format_expr(res.certificate.Q) == "((-1)/(n-1))*x+((1)/(n-1))"
    term = build_term(1, QRat(one, x - one), 0)
    assert verify_telescoper(term, tel, res.certificate)


def test_jacobi_weight():
    a, b, x0 = mpq(1, 2), mpq(1, 3), mpq(1, 7)
    H = QRat(x - QPoly.const(x0), (x - one) * (x + one))
    ST = QRat(QPoly.const(-a), x - one) + QRat(QPoly.const(-b), x + one)
    res = mixed_ct(1, H, ST, certificate=True)
    assert res.telescoper.order == 2
    assert res.telescoper.degree == 3
    term = build_term(1, H, ST)
    assert verify_telescoper(term, res.telescoper, res.certificate)


def test_build_term_rejects_trivial():
    with pytest.raises(InvalidInputForm):
        build_term(1, QRat.const(1), 0)
    with pytest.raises(InvalidInputForm):
        build_term(0, QRat(x, one), 1)


def test_order_bound_examples():
    assert order_bound(build_term(1, QRat(x, one), 1)) == 1
    # A = -n is constant in x and deg B - 1 = 0, so delta = 0
    assert order_bound(build_term(1, QRat(one, x - one), 0)) == 0


def test_dichotomic_matches_incremental():
    H = QRat(x - QPoly.const(mpq(1, 7)), (x - one) * (x + one))
    ST = QRat(QPoly.const(mpq(-1, 2)), x - one)
    a = mixed_ct(1, H, ST, certificate=False)
    b = mixed_ct(1, H, ST, certificate=False, dichotomic=True)
    assert a.telescoper.order == b.telescoper.order
    assert a.telescoper.cleared == b.telescoper.cleared


def test_ensure_minimal_statuses():
    # nothing to do
    _, _, status = ensure_minimal(1, QRat(x, one), 1)
    assert status == "MINIMAL"
    # removable residue away from supp(H): 2/(x-7) folds (x-7)^2 into P
    P2, ST2, status = ensure_minimal(1, QRat(x, one),
                                     QRat(QPoly.const(2), x - QPoly.const(7)))
    assert status == "REWRITTEN"
    r_before = mixed_ct(1, QRat(x, one),
                        QRat(QPoly.const(2), x - QPoly.const(7)),
                        certificate=False).telescoper.order
    r_after = mixed_ct(P2, QRat(x, one), ST2,
                       certificate=False).telescoper.order
    assert (r_before, r_after) == (1, 0)
    # higher-order pole of S/T at a pole of H: not certifiable
    _, _, status = ensure_minimal(1, QRat(one, x - one),
                                  QRat(one, (x - one) ** 2))
    assert status == "UNVERIFIED"


def test_apply_hypergeometric_factor():
    # multiply by n!: rho = n+1; for r = 1 only c_0 changes, by rho(n)
    res = mixed_ct(1, QRat(x, one), 1, certificate=False)
    rho = QRat(QPoly((1, 1)), one)
    out = apply_hypergeometric_factor(res.telescoper, rho)
    assert out.order == res.telescoper.order == 1
    assert out.coeffs[0] == res.telescoper.coeffs[0] * rho
    # cleared form stays primitive with positive leading top coefficient
    assert out.cleared[out.order].coeff(
        int(out.cleared[out.order].degree)) > 0


def test_check_bounds_trace():
    res = mixed_ct(1, QRat(x, one), 1, certificate=False, check_bounds=True)
    assert res.trace.within_budget
    assert len(res.trace.remainders) == len(res.trace.budgets)


def test_telescoper_suite_quick():
    suites.telescoper_suite(8)
