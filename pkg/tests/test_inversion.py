"""Compositional inverse application: Catalan and Moebius closed forms,
the series oracle, recurrence checking and the benchmark family."""

import random

import pytest
from gmpy2 import mpq

from hypertel.errors import NotInvertibleSeries, ReportDegenerate
from hypertel.expr import format_expr
from hypertel.inversion import (CSV_HEADER, admits_lower_order_fit,
                                bench_family, check_recurrence, inv_instance,
                                inversion_order_bound, invert_recurrence,
                                series_reversion)
from hypertel.poly import QPoly, QRat

import suites

x = QPoly.var()
one = QPoly.const(1)

CATALAN = QRat(x - x * x, one)


def test_catalan_recurrence():
    tel = invert_recurrence(CATALAN)
    assert tel.order == 1
    assert [format_expr(c, var="n") for c in tel.cleared] == \
        ["-4*n+2", "n+1"]
    series = series_reversion(CATALAN, 110)
    assert check_recurrence(series, tel, (1, 100))


def test_catalan_series():
    assert series_reversion(CATALAN, 8) == \
        [0, 1, 1, 2, 5, 14, 42, 132, 429]


def test_moebius_recurrence():
    f = QRat(x, one - x)
    tel = invert_recurrence(f)
    assert tel.order == 1
    assert [format_expr(c, var="n") for c in tel.cleared] == ["1", "1"]
    assert series_reversion(f, 6) == [0, 1, -1, 1, -1, 1, -1]


def test_series_oracle_composition():
    # f(g(x)) = x + O(x^{N+1}) for random small rational f
    rng = random.Random(55)
    for case in range(40):
        p = [0, 0]
        while p[1] == 0:
            p[1] = rng.randint(-4, 4)
        for _ in range(rng.randint(0, 2)):
            p.append(rng.randint(-4, 4))
        q = [0]
        while q[0] == 0:
            q[0] = rng.randint(-4, 4)
        for _ in range(rng.randint(0, 2)):
            q.append(rng.randint(-4, 4))
        f = QRat(QPoly(p), QPoly(q))
        N = 12
        g = series_reversion(f, N)
        # evaluate p(g) - x*q(g) mod x^{N+1}
        def compose(poly):
            acc = [mpq(0)] * (N + 1)
            power = [mpq(0)] * (N + 1)
            power[0] = mpq(1)
            for j in range(int(poly.degree) + 1):
                c = poly.coeff(j)
                if c:
                    for t in range(N + 1):
                        acc[t] += c * power[t]
                nxt = [mpq(0)] * (N + 1)
                for a in range(N + 1):
                    if power[a]:
                        for b in range(1, N + 1 - a):
                            if g[b]:
                                nxt[a + b] += power[a] * g[b]
                power = nxt
            return acc
        pg = compose(f.num)
        qg = compose(f.den)
        for t in range(N + 1):
            want = qg[t - 1] if t >= 1 else mpq(0)
            assert pg[t] == want, f"case {case} term {t}"


def test_check_recurrence_rejects_perturbation():
    tel = invert_recurrence(CATALAN)
    series = series_reversion(CATALAN, 30)
    assert check_recurrence(series, tel, (1, 20))
    series[7] += 1
    assert not check_recurrence(series, tel, (1, 20))
    with pytest.raises(NotInvertibleSeries):
        check_recurrence(series, tel, (1, 40))


def test_inversion_order_bound():
    assert inversion_order_bound(CATALAN) == 1
    inst = inv_instance(CATALAN)
    assert (inst.p_star, inst.q_star) == (2, 0)


def test_inv_instance_rejects():
    with pytest.raises(NotInvertibleSeries):
        inv_instance(QRat(one + x, one))      # f(0) != 0
    with pytest.raises(NotInvertibleSeries):
        inv_instance(QRat(x * x, one))        # double zero at 0
    with pytest.raises(NotInvertibleSeries):
        inv_instance("x")


def test_bench_family_small():
    rows = bench_family(1, 3, 7)
    assert CSV_HEADER == "k,order,degree,coeff_bits,seconds"
    assert [(r.k, r.order, r.degree) for r in rows] == \
        [(1, 2, 3), (2, 4, 10), (3, 6, 22)]
    for r in rows:
        assert r.coeff_bits > 0 and r.seconds >= 0
    with pytest.raises(ReportDegenerate):
        bench_family(2, 1, 7)


def test_lower_order_fit_detects_fits():
    # Catalan itself satisfies an order-1 fit, so the order-2 probe finds it
    series = series_reversion(CATALAN, 40)
    assert admits_lower_order_fit(series, 2, 1)
    assert not admits_lower_order_fit(series, 1, 1)


def test_minimality_suite_quick():
    suites.minimality_suite(8)
