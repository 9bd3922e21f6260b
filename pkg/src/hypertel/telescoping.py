"""Creative telescoping for terms F_n(x) = P(n,x) * H(x)**n * E(x), where
E'/E = S/T is rational.

``mixed_ct`` computes a minimal-order telescoper

    L = S_n**r - sum(c_i(n) * S_n**i for i < r)

together with a certificate Q in Q(n)(x) satisfying L(F_n) = (Q * F_n)',
by confining each shifted term into a fixed finite-dimensional space and
solving one small linear system over Q(n).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as int_gcd

from gmpy2 import mpq, mpz

from .arith import (RdegPair, log_derivative, partial_fractions, poly_xgcd,
                    integer_roots, squarefree_part)
from .bivar import NRat, XPoly, XRat
from .errors import DomainError, InvalidInputForm
from .linalg import solve_columns
from .poly import MINUS_INFINITY, QPoly, QRat, interpolate
from .reduction import (_hermite_raw, confinement, efh_split,
                        hermite_reduction, ri_rdeg_bound_parts)


@dataclass(frozen=True)
class HyperTerm:
    """Validated input term.  A/B is the reduced logarithmic derivative of
    the full exponential part, A = n*H'/H*B + (S/T)*B, with B in Q[x] monic
    and A linear in n."""

    P: XPoly
    H: QRat
    ST: QRat
    A: XPoly
    B: QPoly


def _as_xpoly(P) -> XPoly:
    if isinstance(P, XPoly):
        return P
    if isinstance(P, QPoly):
        return XPoly.from_x_poly(P)
    if isinstance(P, (int, mpq, mpz)):
        return XPoly.const(QPoly.const(mpq(P)))
    raise DomainError(f"cannot interpret {type(P).__name__} as P(n, x)")


def _as_qrat(v) -> QRat:
    if isinstance(v, QRat):
        return v
    if isinstance(v, QPoly):
        return QRat(v, QPoly.const(1))
    if isinstance(v, (int, mpq, mpz)):
        return QRat.const(mpq(v))
    raise DomainError(f"cannot interpret {type(v).__name__} as a rational "
                      "function of x")


def build_term(P, H, ST) -> HyperTerm:
    """Validate and normalize a term from its three components.

    Raises InvalidInputForm when the exponential part is trivial (the
    reduction space would be empty) or P is zero."""
    P = _as_xpoly(P)
    H = _as_qrat(H)
    ST = _as_qrat(ST)
    if P.is_zero():
        raise InvalidInputForm("P must be nonzero")
    if H.is_zero():
        raise InvalidInputForm("H must be nonzero")
    n = XPoly.const(QPoly.var())
    if H.num.degree == 0 and H.den.degree == 0:
        F = XRat.from_qrat_x(ST)
    else:
        lh = log_derivative(H)
        F = n * XRat.from_qrat_x(lh) + XRat.from_qrat_x(ST)
    if F.is_zero():
        raise InvalidInputForm("the exponential part is trivial: H'/H and "
                               "S/T must not both vanish")
    A = F.num
    Bx = F.den
    if not Bx.is_n_free():
        raise InvalidInputForm("the denominator of n*H'/H + S/T must be "
                               "free of n")
    rn, rd = A.rdeg_n()
    if rd != 0 or (rn is not MINUS_INFINITY and rn > 1):
        raise InvalidInputForm("the numerator of n*H'/H + S/T must be "
                               "linear in n with constant denominator")
    B = Bx.to_x_poly().monic()
    return HyperTerm(P=P, H=H, ST=ST, A=A, B=B)


def order_bound(term: HyperTerm) -> int:
    """Dimension of the confinement space; the telescoper order never
    exceeds it."""
    delta = max(term.A.degree, term.B.degree - 1)
    if delta is MINUS_INFINITY or delta < 0:
        raise InvalidInputForm("degenerate exponential part")
    return int(delta)


def telescoper_degree_bound(term: HyperTerm, r: int) -> int:
    """Bound on the coefficient degree (in n) of the cleared order-r
    telescoper: r*(deg_n P + deg_x H) + max(deg_x P - delta, 0), computed on
    the denominator-cleared form of P.

    Two additive corrections make the bound provable in full generality:
    when deg_x P >= delta the initial confinement certificate has x-degree
    deg_x P - delta (not one less), which feeds an extra +1 through the
    Hadamard estimate; and an n-denominator of P of degree dd multiplies
    every cleared coefficient by a shift of it, adding dd."""
    delta = order_bound(term)
    dn, dd = term.P.rdeg_n()
    dn = 0 if dn is MINUS_INFINITY else int(dn)
    dh = max(int(term.H.num.degree), int(term.H.den.degree))
    dp = int(term.P.degree)
    extra = 1 if (r >= 1 and dp >= delta) else 0
    return r * (dn + dh) + max(dp - delta, 0) + extra + int(dd)


def ri_rdeg_bound(term: HyperTerm, i: int) -> RdegPair:
    """Budget for the rational degree in n of the i-th confined remainder."""
    dn, dd = term.P.rdeg_n()
    dn = 0 if dn is MINUS_INFINITY else int(dn)
    e_mults, h_mults, deg_f = efh_split(term.H.den, term.ST.den)
    d_h = int(term.H.num.degree) - int(term.H.den.degree)
    return ri_rdeg_bound_parts(
        dn + dd, int(term.P.degree), int(term.A.degree),
        int(term.B.degree), e_mults, h_mults, deg_f, d_h, i, den_n_P=dd)


@dataclass(frozen=True)
class Telescoper:
    """A recurrence operator S_n**r - sum(c_i * S_n**i).

    ``coeffs`` are the c_i in Q(n); ``cleared`` is the primitive integer
    coefficient vector (chat_0, ..., chat_r) of the denominator-cleared
    operator, with chat_r of positive leading coefficient."""

    order: int
    coeffs: tuple
    cleared: tuple

    @property
    def degree(self) -> int:
        """Largest coefficient degree of the cleared operator."""
        return max(int(c.degree) for c in self.cleared if not c.is_zero())


@dataclass(frozen=True)
class Certificate:
    Q: XRat


@dataclass(frozen=True)
class ReductionTrace:
    remainders: tuple
    budgets: tuple
    within_budget: bool


@dataclass(frozen=True)
class MixedCTResult:
    telescoper: Telescoper
    certificate: Certificate | None
    trace: ReductionTrace


def _clear_operator(coeffs):
    """Primitive integer-coefficient vector of S**r - sum c_i S**i."""
    r = len(coeffs)
    den = QPoly.const(1)
    for c in coeffs:
        den = den.lcm(c.den)
    vec = [QPoly() for _ in range(r + 1)]
    vec[r] = den
    for i, c in enumerate(coeffs):
        vec[i] = (c.num * den.exact_div(c.den)) * mpq(-1)
    num_lcm = mpz(1)
    for p in vec:
        for co in p.coeffs:
            num_lcm = num_lcm * co.denominator // mpz(
                int_gcd(int(num_lcm), int(co.denominator)))
    content = mpz(0)
    for p in vec:
        for co in p.coeffs:
            content = mpz(int_gcd(
                int(content), int(abs(co.numerator * num_lcm
                                      // co.denominator))))
    scale = mpq(num_lcm, content if content else 1)
    if vec[r].lc < 0:
        scale = -scale
    return tuple(p * scale for p in vec)


def rank_and_solve(remainders):
    """Given confined remainders R_0, ..., R_r, express R_r in the span of
    the earlier ones over Q(n).  Returns the coefficient list or None."""
    rows = 0
    for rem in remainders:
        if not rem.is_zero():
            rows = max(rows, int(rem.degree) + 1)
    rhs = [remainders[-1].coeff(j) for j in range(rows)] or [QRat.const(0)]
    cols = [[rem.coeff(j) for j in range(rows)] or [QRat.const(0)]
            for rem in remainders[:-1]]
    return solve_columns(cols, rhs)


def mixed_ct(P, H, ST, certificate: bool = True, dichotomic: bool = False,
             check_bounds: bool = False, max_order: int | None = None
             ) -> MixedCTResult:
    """Minimal-order telescoper and certificate for P * H**n * E, E'/E = ST.

    With ``dichotomic`` the full remainder family is computed first and the
    minimal solvable order is located by bisection instead of incremental
    probing.  ``check_bounds`` additionally asserts the degree budgets of
    every confined remainder.  ``max_order`` caps the search (by default the
    dimension bound, which always suffices)."""
    term = build_term(P, H, ST)
    delta = order_bound(term)
    cap = delta if max_order is None else min(max_order, delta)
    f_h, g = term.H.num, term.H.den
    st_eff = term.ST + log_derivative(term.H) \
        if not (term.H.num.degree == 0 and term.H.den.degree == 0) \
        else term.ST
    want_cert = certificate
    g_lift = XPoly.from_x_poly(g)
    f_lift = XPoly.from_x_poly(f_h)
    B_lift = XPoly.from_x_poly(term.B)

    remainders = []
    certs = []  # u_i with W_i = u_i / g**i

    def push_step(p_in):
        r0, q0 = confinement(p_in, term.A, term.B)
        remainders.append(r0)
        if want_cert:
            certs.append(q0 * B_lift)

    def advance():
        i = len(remainders) - 1
        p_next = remainders[-1].shift_n(1)
        rh, s = _hermite_raw(p_next, term.H, st_eff)
        rr, qc = confinement(rh, term.A, term.B)
        remainders.append(rr)
        if want_cert:
            # W_{i+1} = H*W_i(n+1) + H*Q_h + Q_c*B, tracked as u/g**(i+1)
            # with H*Q_h = s/g
            u = f_lift * certs[-1].shift_n(1)
            if not s.is_zero():
                u = u + s * g_lift ** i
            u = u + qc * B_lift * g_lift ** (i + 1)
            certs.append(u)

    push_step(term.P)
    solution = None
    order = None
    if dichotomic:
        while len(remainders) <= cap:
            advance()
        lo, hi = 0, cap
        sols = {}
        while lo < hi:
            mid = (lo + hi) // 2
            sols[mid] = rank_and_solve(remainders[:mid + 1])
            if sols[mid] is not None:
                hi = mid
            else:
                lo = mid + 1
        order = lo
        solution = sols.get(order)
        if solution is None:
            solution = rank_and_solve(remainders[:order + 1])
    else:
        for r in range(cap + 1):
            while len(remainders) <= r:
                advance()
            sol = rank_and_solve(remainders[:r + 1])
            if sol is not None:
                order, solution = r, sol
                break
    if solution is None:
        raise DomainError("no telescoper found within the dimension bound; "
                          "this indicates an internal inconsistency")

    budgets = tuple(ri_rdeg_bound(term, i) for i in range(len(remainders)))
    within = all(RdegPair.of(rem) <= budgets[i]
                 for i, rem in enumerate(remainders))
    if check_bounds:
        assert within, "confined remainder exceeded its degree budget"
    trace = ReductionTrace(remainders=tuple(remainders), budgets=budgets,
                           within_budget=within)

    coeffs = tuple(solution)
    tel = Telescoper(order=order, coeffs=coeffs,
                     cleared=_clear_operator(coeffs))
    cert_obj = None
    if want_cert:
        q = _assemble_certificate(certs, coeffs, order, g, term.P)
        cert_obj = Certificate(Q=q)
    return MixedCTResult(telescoper=tel, certificate=cert_obj, trace=trace)


def _assemble_certificate(certs, coeffs, order: int, g: QPoly,
                          P: XPoly) -> XRat:
    """Combine the per-order certificate numerators u_i (over g**i) into

        Q = (u_r - sum c_i u_i g**(r-i)) / (g**r * P)

    working over one product denominator in n and normalizing only once,
    which keeps the intermediate swell linear."""
    d = QPoly.const(1)
    for c in coeffs:
        d = d.lcm(c.den)
    w_nums = [p * d for p in certs[order].nums]
    w_den = certs[order].den
    for i in range(order):
        if coeffs[i].is_zero():
            continue
        scale = coeffs[i].num * d.exact_div(coeffs[i].den)
        gpow = g ** (order - i)
        u = certs[i]
        base = [p * scale for p in u.nums]
        dg = int(gpow.degree)
        t = [QPoly() for _ in range(len(base) + dg)]
        for a_idx, pa in enumerate(base):
            if pa.is_zero():
                continue
            for b_idx in range(dg + 1):
                cb = gpow.coeff(b_idx)
                if cb:
                    t[a_idx + b_idx] = t[a_idx + b_idx] + pa * cb
        ud = u.den
        m = max(len(w_nums), len(t))
        new = []
        for j in range(m):
            a = w_nums[j] * ud if j < len(w_nums) else QPoly()
            b = t[j] * w_den if j < len(t) else QPoly()
            new.append(a - b)
        w_nums, w_den = new, w_den * ud
    w = XPoly(tuple(w_nums), w_den)
    den = XPoly.from_x_poly(g ** order) * P.scale_n(d)
    # full reduction needs a gcd in x whose pseudo-remainders blow up in n;
    # the certificate is only ever evaluated or printed, so reduce just the
    # cheap cases
    if int(den.degree) <= 2:
        return XRat(w, den)
    return XRat(w, den, _reduced=True)


def verify_telescoper(term: HyperTerm, tel: Telescoper,
                      cert: Certificate) -> bool:
    """Exact check of the telescoping identity

        sum_i chat_i(n) P(n+i, x) H**i = chat_r(n) * ((Q*P)' + Q*P*A/B)

    by evaluation at enough integer values of n to separate unequal rational
    functions, which makes the test exact."""
    r = tel.order
    chat = tel.cleared
    pn, pd = term.P.rdeg_n()
    pn = 0 if pn is MINUS_INFINITY else int(pn)
    wn, wd = cert.Q.num.rdeg_n()
    wn = 0 if wn is MINUS_INFINITY else int(wn)
    w2n, w2d = cert.Q.den.rdeg_n()
    w2n = 0 if w2n is MINUS_INFINITY else int(w2n)
    dc = max(int(c.degree) for c in chat if not c.is_zero())
    D = dc + 2 * pn + (r + 2) * pd + wn + wd + w2n + w2d + 2
    h_pows = [QRat.const(1)]
    for _ in range(r):
        h_pows.append(h_pows[-1] * term.H)
    fhat_num = term.A
    checked = 0
    n0 = 10
    attempts = 0
    while checked <= D:
        n0 += 1
        attempts += 1
        if attempts > 10 * (D + 2) + 1000:
            raise DomainError("could not find enough good evaluation points")
        try:
            lhs = QRat.const(0)
            for i in range(r + 1):
                ci = chat[i](n0)
                if ci == 0:
                    continue
                pe = QRat(term.P.eval_n(n0 + i), QPoly.const(1))
                lhs = lhs + pe * h_pows[i] * ci
            we = cert.Q.eval_n(n0) * QRat(term.P.eval_n(n0), QPoly.const(1))
            fe = QRat(fhat_num.eval_n(n0), term.B)
            rhs = (we.derivative() + we * fe) * chat[r](n0)
        except DomainError:
            continue
        if not (lhs - rhs).is_zero():
            return False
        checked += 1
    return True


def apply_hypergeometric_factor(tel: Telescoper, rho: NRat) -> Telescoper:
    """Telescoper for u_n * F_n given one for F_n, where u_{n+1}/u_n = rho.

    The certificate is unchanged; coefficient i picks up the factor
    prod(rho(n+j) for j in range(i, r))."""
    from .arith import shift_n
    r = tel.order
    new = []
    for i, c in enumerate(tel.coeffs):
        f = QRat.const(1)
        for j in range(i, r):
            f = f * shift_n(rho, j)
        new.append(c * f)
    new = tuple(new)
    return Telescoper(order=r, coeffs=new, cleared=_clear_operator(new))


def _simple_part(F: QRat) -> QRat:
    """Simple (square-free denominator) part of F modulo derivatives and
    polynomials; the residues at every finite pole are preserved."""
    _, parts = partial_fractions(F, refine=False)
    out = QRat.const(0)
    for Uk, gk, k in parts:
        u = Uk
        _, sg, tg = poly_xgcd(gk, gk.derivative())
        while k > 1:
            # u/g**k = (s + t'/(k-1))/g**(k-1) + d/dx(-t/((k-1) g**(k-1)))
            # with u = s*g + t*g' from the scaled Bezout identity
            t = (tg * u) % gk
            s = (u - t * gk.derivative()).exact_div(gk)
            u = s + t.derivative() * mpq(1, k - 1)
            k -= 1
        out = out + QRat(u, gk)
    return out


def _positive_integer_residues(F: QRat):
    """Positive integer residues of a simple proper fraction F = S1/T1,
    as pairs (v, G_v) with G_v = gcd(T1, S1 - v*T1')."""
    S1, T1 = F.num, F.den
    if T1.degree == 0 or S1.is_zero():
        return []
    T1p = T1.derivative()
    # resultant in the residue variable by interpolation
    dz = int(T1.degree)
    pts, vals = [], []
    z0 = 0
    while len(pts) <= dz:
        z0 += 1
        pts.append(mpq(z0))
        vals.append((S1 - T1p * mpq(z0)).resultant(T1))
    rz = interpolate(pts, vals)
    if rz.is_zero():
        # degenerate interpolation; fall back to scanning small residues
        roots = [mpq(v) for v in range(1, dz + 2)]
    else:
        roots = [v for v in integer_roots(rz) if v > 0]
    out = []
    for v in sorted(roots):
        G = T1.gcd(S1 - T1p * mpq(v))
        if G.degree > 0:
            out.append((int(v), G))
    return out


def ensure_minimal(P, H, ST):
    """Rewrite (P, ST) so that the telescoper of the rewritten term is
    provably minimal, when possible.

    Removable poles of S/T away from the zeros and poles of H (simple poles
    with positive integer residue v at G) are absorbed into P as G**v.
    Returns (P', ST', status) with status MINIMAL (nothing to do),
    REWRITTEN (removable residues absorbed) or UNVERIFIED (S/T has a higher
    order pole at a zero or pole of H, which this criterion does not
    cover)."""
    term = build_term(P, H, ST)
    P, H, ST = term.P, term.H, term.ST
    if H.num.degree == 0 and H.den.degree == 0:
        supp = QPoly.const(1)
    else:
        supp = squarefree_part(H.num.monic() * H.den)
    T = ST.den
    unverified = False
    if supp.degree > 0 and T.degree > 0:
        t_out = T
        while True:
            g = t_out.gcd(supp)
            if g.degree <= 0:
                break
            t_out = t_out.exact_div(g)
        t_in = T.exact_div(t_out)
        if t_in.gcd(t_in.derivative()).degree > 0:
            unverified = True
    else:
        t_out = T
        t_in = QPoly.const(1)
    # part of ST supported away from the zeros and poles of H
    if t_in.degree > 0 and t_out.degree > 0:
        _, u, v = poly_xgcd(t_in, t_out)
        # S/(t_in t_out) = S*u/t_out + S*v/t_in
        st_out = QRat(ST.num * u, t_out)
    elif t_in.degree > 0:
        st_out = QRat.const(0)
    else:
        st_out = ST
    rewritten = False
    if not st_out.is_zero():
        simple = _simple_part(st_out)
        for v, G in _positive_integer_residues(simple):
            P = P * XPoly.from_x_poly(G) ** v
            ST = ST - QRat(G.derivative() * v, G)
            rewritten = True
    status = "UNVERIFIED" if unverified else (
        "REWRITTEN" if rewritten else "MINIMAL")
    return P, ST, status
