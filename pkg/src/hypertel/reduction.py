"""Rewriting modulo derivatives: confinement, basic reduction and the
Hermite-like reduction, together with the rational-degree budget calculators
that the driver asserts against.

Conventions.  A term is described by the reduced logarithmic derivative
A/B of its exponential part, with A in Q(n)[x] (linear in n) and B in Q[x].
``confinement(P, A, B)`` rewrites P = R + (Q*B)' + Q*A with deg R < delta,
delta = max(deg A, deg B - 1).  ``basic_reduction`` and
``hermite_reduction`` lower denominator multiplicities; each returns its
reduced polynomial together with an exact certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import (RdegPair, inv_mod, log_derivative, partial_fractions,
                    squarefree_decomp)
from .bivar import NRat, XPoly, XRat
from .errors import (DomainError, InvalidInputForm, NotInvertible,
                     PreconditionViolated)
from .poly import MINUS_INFINITY, QPoly, QRat


@dataclass(frozen=True)
class ReductionStep:
    """One rewriting step: the reduced polynomial, its certificate and the
    kind of rewriting that produced it (CONFINE, BASIC or HERMITE)."""

    reduced: XPoly
    certificate: XRat
    kind: str


def _as_x_qpoly(B) -> QPoly:
    """Accept B as QPoly or as an n-free XPoly."""
    if isinstance(B, XPoly):
        return B.to_x_poly()
    return B


def confinement(P: XPoly, A: XPoly, B) -> tuple:
    """Rewrite P = R + (Q*B)' + Q*A with deg R <= delta-1, deg Q <= deg P - delta.

    Solves for Q coefficient by coefficient, from the top down; the pivot at
    loop index i is c = a_delta + (delta+i+1) b_{delta+1}.  A vanishing pivot
    means the term has an integer residue obstructing the reduction and
    raises InvalidInputForm carrying that index.
    """
    bq = _as_x_qpoly(B)
    delta = max(A.degree, bq.degree - 1)
    if delta is MINUS_INFINITY or delta < 0:
        raise DomainError("confinement requires max(deg A, deg B - 1) >= 0")
    d = (P.degree if not P.is_zero() else MINUS_INFINITY) - delta
    if d < 0:
        return P, XPoly.zero()
    d = int(d)
    a = [A.coeff(j) for j in range(delta + 1)]
    b = [bq.coeff(j) for j in range(delta + 2)]
    p = [P.coeff(j) for j in range(int(P.degree) + 1)]
    q = [QRat.const(0)] * (d + 1)
    for i in range(d, -1, -1):
        c = a[delta] + b[delta + 1] * (delta + i + 1)
        if c.is_zero():
            raise InvalidInputForm(
                "vanishing confinement pivot: the term has a positive "
                "integer residue", index=i)
        acc = p[delta + i]
        for j in range(1, delta + 1):
            if i + j <= d:
                acc = acc - q[i + j] * a[delta - j]
        s = QRat.const(0)
        for j in range(1, delta + 2):
            if i + j <= d and b[delta + 1 - j]:
                s = s + q[i + j] * b[delta + 1 - j]
        acc = acc - s * (delta + i + 1)
        q[i] = acc / c
    Q = XPoly.from_coeffs(q)
    Bx = XPoly.from_x_poly(bq)
    R = P - (Q * Bx).derivative() - Q * A
    assert R.degree <= delta - 1, "confinement degree cap violated"
    assert Q.degree <= P.degree - delta, "confinement quotient cap violated"
    return R, Q


def basic_reduction(P: XPoly, F: XRat, G: QPoly, k: int) -> tuple:
    """Lower the G-power by k: returns (R, q) with

        P = G**k * (R + q' + F*q)

    exactly, where q has denominator dividing G**k.  G must be a square-free
    divisor of den(F); the required modular inverses exist for inputs coming
    from a hyperexponential term (and their failure raises
    PreconditionViolated).
    """
    R, cert_num = _basic_raw(P, F, G, k)
    q = XRat(cert_num, XPoly.from_x_poly(G) ** k)
    return R, q


def _basic_raw(P: XPoly, F: XRat, G: QPoly, k: int) -> tuple:
    """Work loop of :func:`basic_reduction`; the certificate is returned as
    a bare numerator over G**k to keep hot callers free of normalization."""
    if k < 1:
        raise DomainError("multiplicity k must be >= 1")
    A, B = F.num, F.den
    bq = _as_x_qpoly(B)
    try:
        b_over_g = bq.exact_div(G)
    except DomainError as exc:
        raise PreconditionViolated("G does not divide den(F)") from exc
    Gx = XPoly.from_x_poly(G)
    BGpG = XPoly.from_x_poly(b_over_g * G.derivative())  # B*G'/G
    Bp = XPoly.from_x_poly(bq.derivative())
    R = P
    cert_num = XPoly.zero()  # numerator of the certificate over G**k
    for i in range(1, k + 1):
        C = A + BGpG * (i - k - 1) + Bp
        try:
            inv = inv_mod(C, Gx)
        except NotInvertible as exc:
            raise PreconditionViolated(
                "C = A + (i-k-1)BG'/G + B' is not invertible modulo G; "
                "the input is not of hyperexponential shape") from exc
        Q = ((R % Gx) * inv) % Gx
        R = (R - Q.derivative() * B - Q * C).exact_div(Gx)
        # per-iteration certificate Q*B/G^(k+1-i), over the common G**k
        cert_num = cert_num + Q * B * Gx ** (i - 1)
    cap = max(P.degree - k * G.degree, A.degree - 1, bq.degree - 2)
    assert R.degree <= cap, "basic reduction degree cap violated"
    return R, cert_num


def hermite_reduction(P: XPoly, H: QRat, ST: QRat) -> tuple:
    """Trade one power of H for a derivative: returns (R, Q) with

        P = R/H + n*Q*H'/H + Q*S/T + Q'

    exactly.  H and S/T have coefficients in Q; P may be any element of
    Q(n)[x].
    """
    R, s = _hermite_raw(P, H, ST)
    # the certificate is (s/g)/H = s/num(H)
    Q = XRat(s, XPoly.from_x_poly(H.num))
    return R, Q


def _hermite_raw(P: XPoly, H: QRat, ST: QRat) -> tuple:
    """Work loop of :func:`hermite_reduction`; the certificate times H is
    returned as a bare numerator s over den(H)."""
    if H.is_zero():
        raise DomainError("H must be nonzero")
    g = H.den
    U, parts = partial_fractions(H, refine=False)
    R = P * XPoly.from_x_poly(U)
    hp = log_derivative(H)
    n_minus_1 = XPoly.const(QPoly((-1, 1)))
    K = XRat(XPoly.from_x_poly(hp.num) * n_minus_1,
             XPoly.from_x_poly(hp.den)) + XRat.from_qrat_x(ST)
    s = XPoly.zero()
    for Uk, gk, k in parts:
        rk, ck = _basic_raw(P * XPoly.from_x_poly(Uk), K, gk, k)
        R = R + rk
        s = s + ck * XPoly.from_x_poly(g.exact_div(gk ** k))
    dA, dB = K.num.degree, K.den.degree
    dinf = H.num.degree - H.den.degree
    cap = max(P.degree + dinf, P.degree - 1, dA - 1, dB - 2)
    assert R.degree <= cap, "Hermite reduction degree cap violated"
    return R, s


# ---------------------------------------------------------------------------
# Rational-degree budgets
# ---------------------------------------------------------------------------

def confine_rdeg_bound(deg_P: int, deg_A: int, deg_B: int) -> RdegPair:
    """Growth budget of one confinement call."""
    if deg_B <= deg_A + 1:
        m = deg_P - deg_A + 1
        return RdegPair(m, m)
    m = (deg_P - deg_B + 1) // (deg_B - deg_A - 1) + 1
    return RdegPair(m, 0)


def basic_rdeg_bound(k: int, deg_G: int, nu: int, divides_T: bool) -> RdegPair:
    """Growth budget of one basic reduction, by the G-adic valuation nu of B
    and whether G divides T.  When several cases apply (G divides both T and
    the denominator of H with different multiplicities) the componentwise
    maximum of the applicable budgets is returned."""
    cases = []
    if nu > 1:
        cases.append(RdegPair(k, 0))
    if nu == 1 or not cases:
        if divides_T:
            cases.append(RdegPair(k * deg_G, k * deg_G))
        else:
            cases.append(RdegPair(k, k))
    if nu > 1 and divides_T:
        cases.append(RdegPair(k * deg_G, k * deg_G))
    num = max(c.num for c in cases)
    den = max(c.den for c in cases)
    return RdegPair(num, den)


def hermite_rdeg_bound(e_mults, h_mults, deg_f: int) -> RdegPair:
    """Growth budget of one Hermite reduction, from the split g = e*f*h of
    the denominator of H (e = gcd(g,T,T'), f = gcd(g/e,T), h the rest);
    ``e_mults`` and ``h_mults`` list the multiplicities with a nontrivial
    square-free factor."""
    top = (max(e_mults) if e_mults else 0) + sum(h_mults) + deg_f
    bot = sum(h_mults) + deg_f
    return RdegPair(top, bot)


def ri_rdeg_bound_parts(deg_n_P: int, deg_x_P: int, deg_A: int, deg_B: int,
                        e_mults, h_mults, deg_f: int, d_H: int,
                        i: int, den_n_P: int = 0) -> RdegPair:
    """Budget for the i-th confined remainder of the telescoping loop:
    Rdeg_n(P) + alpha + i*(beta + gamma); ``den_n_P`` is the n-denominator
    degree of P (it persists through every rewriting step)."""
    delta = max(deg_A, deg_B - 1)
    if delta == deg_A:
        m = max(deg_x_P - delta + 1, 0)
        alpha = RdegPair(m, m)
    else:
        alpha = RdegPair(max((deg_x_P - delta) // (delta - deg_A) + 1, 0), 0)
    beta = hermite_rdeg_bound(e_mults, h_mults, deg_f)
    if d_H >= 0 and delta == deg_A:
        gamma = RdegPair(d_H + 1, d_H + 1)
    elif d_H >= 0:
        gamma = RdegPair(d_H // (delta - deg_A) + 1, 0)
    else:
        gamma = RdegPair(0, 0)
    return RdegPair(deg_n_P, den_n_P) + alpha + i * (beta + gamma)


def rdeg_bounds(step: str, params: dict) -> RdegPair:
    """Dispatch to the budget for one reduction step kind.

    ``step`` is one of CONFINE, BASIC, HERMITE, RI; ``params`` carries the
    degrees and multiplicities named by the corresponding calculator."""
    if step == "CONFINE":
        return confine_rdeg_bound(params["deg_P"], params["deg_A"],
                                  params["deg_B"])
    if step == "BASIC":
        return basic_rdeg_bound(params["k"], params.get("deg_G", 1),
                                params["nu"], params.get("divides_T", False))
    if step == "HERMITE":
        return hermite_rdeg_bound(params.get("e_mults", ()),
                                  params.get("h_mults", ()),
                                  params.get("deg_f", 0))
    if step == "RI":
        return ri_rdeg_bound_parts(
            params["deg_n_P"], params["deg_x_P"], params["deg_A"],
            params["deg_B"], params.get("e_mults", ()),
            params.get("h_mults", ()), params.get("deg_f", 0),
            params["d_H"], params["i"], params.get("den_n_P", 0))
    raise DomainError(f"unknown reduction step kind: {step!r}")


def efh_split(g: QPoly, T: QPoly):
    """Split g = e*f*h with e = gcd(g, T, T') and f = gcd(g/e, T); returns
    (e_mults, h_mults, deg_f) as consumed by the budget calculators."""
    if g.degree <= 0:
        return (), (), 0
    e = g.gcd(T).gcd(T.derivative()) if not T.is_zero() else QPoly.const(1)
    if T.is_zero():
        e = QPoly.const(1)
    rest = g.exact_div(e) if e.degree > 0 else g
    f = rest.gcd(T) if not T.is_zero() else QPoly.const(1)
    h = rest.exact_div(f) if f.degree > 0 else rest
    e_mults = tuple(k for _, k in squarefree_decomp(e)) if e.degree > 0 else ()
    h_mults = tuple(k for _, k in squarefree_decomp(h)) if h.degree > 0 else ()
    return e_mults, h_mults, f.degree if f.degree > 0 else 0
