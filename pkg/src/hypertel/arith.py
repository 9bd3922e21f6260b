"""Shared exact-arithmetic operations: extended gcd, square-free and partial
fraction decompositions, modular inverses, logarithmic derivatives, degree
bookkeeping and shifts in n.

The polynomial functions are generic over :class:`~hypertel.poly.QPoly`
(coefficients in Q) and :class:`~hypertel.bivar.XPoly` (coefficients in
Q(n)); both expose the same dense-polynomial interface.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bivar import NRat, XPoly, XRat
from .errors import DomainError, NotInvertible
from .poly import MINUS_INFINITY, QPoly, QRat


def _one_like(p):
    return XPoly.one() if isinstance(p, XPoly) else QPoly.const(1)


def _zero_like(p):
    return XPoly.zero() if isinstance(p, XPoly) else QPoly()


def poly_xgcd(a, b):
    """Extended gcd: returns (g, u, v) with g = u*a + v*b, g monic.

    Raises DomainError when both inputs are zero."""
    if a.is_zero() and b.is_zero():
        raise DomainError("xgcd(0, 0) is undefined")
    one, zero = _one_like(a), _zero_like(a)
    r0, r1 = a, b
    u0, u1 = one, zero
    v0, v1 = zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    lc = r0.lc
    if isinstance(r0, XPoly):
        return r0.div_n(lc), u0.div_n(lc), v0.div_n(lc)
    inv = 1 / lc
    return r0 * inv, u0 * inv, v0 * inv


def squarefree_decomp(p):
    """Yun's square-free decomposition of a monic nonzero polynomial.

    Returns a list of (factor, multiplicity) pairs with multiplicities
    strictly increasing and factors monic, square-free, pairwise coprime;
    trivial (degree-0) factors are omitted."""
    if p.is_zero():
        raise DomainError("square-free decomposition of zero")
    if p.degree == 0:
        return []
    out = []
    dp = p.derivative()
    a = p.gcd(dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    k = 1
    while not (b.degree == 0):
        f = b.gcd(d)
        if f.degree > 0:
            out.append((f, k))
        b = b.exact_div(f)
        c = d.exact_div(f)
        d = c - b.derivative()
        k += 1
    return out


def sqf_recompose(decomp):
    """Product of factor**mult over a square-free decomposition."""
    if not decomp:
        return None
    out = _one_like(decomp[0][0])
    for f, m in decomp:
        out = out * f ** m
    return out


def squarefree_part(p):
    """Product of the distinct monic irreducible factors of p."""
    if p.is_zero():
        raise DomainError("square-free part of zero")
    if p.degree == 0:
        return _one_like(p)
    g = p.gcd(p.derivative())
    return p.exact_div(g).monic()


def partial_fractions(F, refine: bool = True):
    """Partial fraction decomposition along the square-free decomposition of
    the denominator.

    Returns (U, parts) with F = U + sum(U_k / g_k**k for (U_k, g_k, k) in
    parts), deg U_k < deg(g_k**k); zero numerators are omitted.  With
    ``refine`` each square-free block is additionally split at its rational
    roots, so denominators like x*(x-1) yield one part per linear factor."""
    num, den = F.num, F.den
    U, rem = divmod(num, den)
    if rem.is_zero():
        return U, []
    decomp = squarefree_decomp(den)
    moduli = []
    for g, k in decomp:
        if refine and not isinstance(g, XPoly):
            for piece in split_at_rational_roots(g):
                moduli.append((piece ** k, piece, k))
        else:
            moduli.append((g ** k, g, k))
    parts = []
    for m, g, k in moduli:
        cof = den.exact_div(m)
        # rem/den = sum over blocks of (rem * cof^{-1} mod m) / m
        inv = inv_mod(cof, m)
        uk = (rem % m) * inv % m
        if not uk.is_zero():
            parts.append((uk, g, k))
    return U, parts


def split_at_rational_roots(g: QPoly):
    """Split a square-free monic polynomial into monic linear factors (one
    per rational root found) plus the rootless cofactor."""
    pieces = []
    rest = g
    for r in rational_roots(g):
        lin = QPoly((-r, 1))
        pieces.append(lin)
        rest = rest.exact_div(lin)
    if rest.degree > 0:
        pieces.append(rest)
    return pieces


_TRIAL_DIVISION_BOUND = 100_000


def _divisors_bounded(v) -> list:
    """Positive divisors of |v|, complete whenever |v| factors over primes
    below the trial-division bound (larger cofactors are kept as single
    candidate divisors — a best-effort root search, never a wrong one)."""
    from gmpy2 import mpz

    v = abs(mpz(v))
    if v == 0:
        return []
    factors = {}
    p = 2
    while p * p <= v and p < _TRIAL_DIVISION_BOUND:
        while v % p == 0:
            factors[p] = factors.get(p, 0) + 1
            v //= p
        p += 1 if p == 2 else 2
    if v > 1:
        factors[v] = factors.get(v, 0) + 1
    divs = [mpz(1)]
    for prime, mult in factors.items():
        divs = [d * prime ** e for d in divs for e in range(mult + 1)]
        if len(divs) > 4096:  # keep the candidate set tractable
            divs = divs[:4096]
    return sorted(divs)


def rational_roots(p: QPoly) -> list:
    """Rational roots of p (each listed once), via the rational root test on
    the primitive integer form."""
    from gmpy2 import mpq

    if p.is_zero():
        raise DomainError("every rational is a root of the zero polynomial")
    roots = []
    prim, _ = p.primitive_int()
    cs = list(prim.coeffs)
    v = 0
    while cs and cs[0] == 0:
        cs.pop(0)
        v += 1
    if v:
        roots.append(mpq(0))
    if len(cs) <= 1:
        return roots
    trailing = cs[0].numerator
    leading = cs[-1].numerator
    body = QPoly(cs)
    for num in _divisors_bounded(trailing):
        for den in _divisors_bounded(leading):
            for cand in (mpq(num, den), mpq(-num, den)):
                if cand not in roots and body(cand) == 0:
                    roots.append(cand)
    return roots


def integer_roots(p: QPoly) -> list:
    """Integer roots of p, a restriction of :func:`rational_roots`."""
    return [r for r in rational_roots(p) if r.denominator == 1]


def inv_mod(a, m):
    """Inverse of a modulo m: result*a = 1 (mod m), deg result < deg m."""
    if m.degree < 1:
        raise DomainError("modulus must have positive degree")
    g, u, _ = poly_xgcd(a % m, m)
    if g.degree != 0:
        raise NotInvertible("element not invertible modulo the modulus",
                            gcd=g)
    return u % m


def log_derivative(H: QRat) -> QRat:
    """Reduced form of H'/H; the denominator is the radical of num*den."""
    if H.is_zero():
        raise DomainError("logarithmic derivative of zero")
    num, den = H.num, H.den
    return QRat(num.derivative() * den - num * den.derivative(), num * den)


def degrees(F):
    """(numerator degree, denominator degree, degree at infinity)."""
    if F.is_zero():
        return (MINUS_INFINITY, 0, MINUS_INFINITY)
    k = F.num.degree
    l = F.den.degree
    return (k, l, k - l)


def shift_n(e, i: int):
    """Substitute n -> n+i in an NRat, XPoly or XRat (canonical result)."""
    if isinstance(e, (XPoly, XRat)):
        return e.shift_n(i)
    if isinstance(e, QRat):
        if i == 0:
            return e
        return QRat(e.num.taylor_shift(i), e.den.taylor_shift(i))
    raise DomainError(f"shift_n not defined for {type(e).__name__}")


@dataclass(frozen=True)
class RdegPair:
    """Rational degree in n: (numerator degree, denominator degree).

    Supports only componentwise comparison and addition."""

    num: int
    den: int

    def __add__(self, other: "RdegPair") -> "RdegPair":
        return RdegPair(self.num + other.num, self.den + other.den)

    def __rmul__(self, k: int) -> "RdegPair":
        return RdegPair(k * self.num, k * self.den)

    def __le__(self, other: "RdegPair") -> bool:
        return self.num <= other.num and self.den <= other.den

    @staticmethod
    def of(value) -> "RdegPair":
        """Rational degree in n of an NRat or XPoly (zero maps to (-1, 0))."""
        if isinstance(value, XPoly):
            dn, dd = value.rdeg_n()
            return RdegPair(int(dn) if dn != MINUS_INFINITY else -1, dd)
        if isinstance(value, QRat):
            if value.is_zero():
                return RdegPair(-1, 0)
            return RdegPair(value.num.degree, value.den.degree)
        raise DomainError(f"Rdeg not defined for {type(value).__name__}")
