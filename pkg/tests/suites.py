"""Randomized property suites, parameterized by case count so the unit tests
can run quick passes while the acceptance gate runs the full counts."""

import random

from gmpy2 import mpq

from hypertel.arith import RdegPair, log_derivative, squarefree_decomp
from hypertel.bivar import NRat, XPoly, XRat
from hypertel.errors import (DomainError, InvalidInputForm,
                             PreconditionViolated)
from hypertel.poly import QPoly, QRat
from hypertel.reduction import (basic_reduction, confinement,
                                hermite_reduction)
from hypertel.telescoping import (Certificate, Telescoper, build_term,
                                  mixed_ct, order_bound,
                                  telescoper_degree_bound, verify_telescoper)

from conftest import rand_qpoly, rand_qrat, rand_xpoly, rand_term, seeded

N_SYM = XRat(XPoly.const(QPoly.var()), None, _reduced=True)


def _lift(p: XPoly) -> XRat:
    return XRat(p, None, _reduced=True)


def confinement_suite(n_cases, seed=9001):
    """P == R + (Q*B)' + Q*A recombines exactly, with the degree caps."""
    rng = seeded(seed)
    done = 0
    while done < n_cases:
        P, H, ST = rand_term(rng)
        term = build_term(P, H, ST)
        Pr = rand_xpoly(rng, rng.randint(0, 4), nonzero=True)
        try:
            R, Q = confinement(Pr, term.A, term.B)
        except InvalidInputForm:
            continue
        Bx = XPoly.from_x_poly(term.B)
        back = R + (Q * Bx).derivative() + Q * term.A
        assert back == Pr, f"confinement case {done}"
        delta = order_bound(term)
        assert R.degree <= delta - 1
        done += 1


def basic_suite(n_cases, seed=9002):
    """P == G**k * (R + q' + F*q) recombines exactly."""
    rng = seeded(seed)
    done = 0
    while done < n_cases:
        _, H, ST = rand_term(rng)
        hp = log_derivative(QRat(H.num, H.den))
        nm1 = XPoly.const(QPoly((-1, 1)))
        K = XRat(XPoly.from_x_poly(hp.num) * nm1,
                 XPoly.from_x_poly(hp.den)) + XRat.from_qrat_x(ST)
        if K.den.degree <= 0:
            continue
        den_x = K.den.to_x_poly()
        decomp = squarefree_decomp(den_x.monic())
        if not decomp:
            continue
        G, k = decomp[rng.randrange(len(decomp))]
        P = rand_xpoly(rng, rng.randint(0, 3), nonzero=True)
        try:
            R, q = basic_reduction(P, K, G, k)
        except PreconditionViolated:
            continue
        Gk = _lift(XPoly.from_x_poly(G ** k))
        back = Gk * (_lift(R) + q.derivative() + K * q)
        assert back == _lift(P), f"basic case {done}"
        done += 1


def hermite_suite(n_cases, seed=9003):
    """P == R/H + n*Q*H'/H + Q*ST + Q' recombines exactly."""
    rng = seeded(seed)
    done = 0
    while done < n_cases:
        P, H, ST = rand_term(rng)
        if H.num.degree == 0 and H.den.degree == 0:
            continue
        try:
            R, Q = hermite_reduction(P, H, ST)
        except (PreconditionViolated, InvalidInputForm):
            continue
        Hx = XRat.from_qrat_x(H)
        ld = XRat.from_qrat_x(log_derivative(H))
        STx = XRat.from_qrat_x(ST)
        back = _lift(R) / Hx + N_SYM * Q * ld + Q * STx + Q.derivative()
        assert back == _lift(P), f"hermite case {done}"
        done += 1


def telescoper_suite(n_cases, seed=9004, perturb_all_below=40):
    """On random terms mixed_ct satisfies: r <= delta, cleared degree within
    the bound, remainders within their Rdeg budgets, verify_telescoper TRUE,
    and FALSE after any single-coefficient perturbation."""
    rng = seeded(seed)
    done = 0
    while done < n_cases:
        P, H, ST = rand_term(rng)
        try:
            res = mixed_ct(P, H, ST, certificate=True, check_bounds=True)
        except InvalidInputForm:
            continue
        term = build_term(P, H, ST)
        tel = res.telescoper
        assert tel.order <= order_bound(term), f"case {done}"
        assert tel.degree <= telescoper_degree_bound(term, tel.order), \
            f"case {done}"
        assert res.trace.within_budget, f"case {done}"
        assert verify_telescoper(term, tel, res.certificate), f"case {done}"
        # perturbations: every single cleared coefficient, or one random
        # coefficient once the sampled budget is spent.  An order-0
        # telescoper means P == (QP)' + QP*A/B identically, so any rescaling
        # of its single coefficient is still a valid telescoper; there is
        # nothing to falsify
        if tel.order == 0:
            done += 1
            continue
        slots = [(i, j) for i, c in enumerate(tel.cleared)
                 for j in range(int(c.degree) + 1 if not c.is_zero() else 1)]
        if done >= perturb_all_below:
            slots = [slots[rng.randrange(len(slots))]]
        for i, j in slots:
            bumped = list(tel.cleared)
            bumped[i] = bumped[i] + QPoly.monomial(1, j)
            if bumped[tel.order].is_zero():
                continue
            bad = Telescoper(order=tel.order, coeffs=tel.coeffs,
                             cleared=tuple(bumped))
            assert not verify_telescoper(term, bad, res.certificate), \
                f"case {done} perturbation {(i, j)}"
        done += 1


def minimality_suite(n_cases, seed=9005):
    """No exact lower-order polynomial-coefficient recurrence fits 300
    series coefficients of randomly drawn inversion instances."""
    from hypertel.inversion import (admits_lower_order_fit, _draw_instance,
                                    inverse_coefficient_term,
                                    invert_recurrence, series_reversion)
    from hypertel.errors import ReportDegenerate
    rng = seeded(seed)
    done = 0
    while done < n_cases:
        k = rng.randint(1, 2)
        try:
            f = _draw_instance(random.Random(rng.randrange(1 << 30)), k, 9)
            tel = invert_recurrence(f)
        except (ReportDegenerate, InvalidInputForm, DomainError):
            continue
        if tel.order == 0:
            continue
        term = inverse_coefficient_term(f)
        cap = telescoper_degree_bound(term, tel.order - 1)
        # full column rank on the row prefix used by the fit test already
        # rules out a fit over any longer window (300 terms included), so
        # only the prefix of the series is ever needed
        n_terms = tel.order * (cap + 1) + 12 + tel.order
        series = series_reversion(f, n_terms)
        assert not admits_lower_order_fit(series, tel.order, cap), \
            f"case {done}"
        done += 1
