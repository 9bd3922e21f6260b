"""Exact univariate polynomials and rational functions over the rationals.

The coefficient type is :class:`gmpy2.mpq` (arbitrary-precision rationals);
the exported alias :data:`BigRat` names it.  Polynomials are dense and
immutable, with the zero polynomial of degree ``MINUS_INFINITY`` so that the
usual ``max``/comparison logic works without special cases.

The same classes serve two roles: polynomials in ``x`` with rational
coefficients, and polynomials in ``n`` used as the building blocks of the
field Q(n) (see :mod:`hypertel.bivar`).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from gmpy2 import mpq, mpz

from .errors import DomainError

#: Ground-field element type: an exact arbitrary-precision rational.
BigRat = mpq

#: Degree of the zero polynomial.  Compares below every integer and absorbs
#: addition, so bounds like max(deg a, deg b - 1) need no branching.
MINUS_INFINITY = float("-inf")

_Q0 = mpq(0)
_Q1 = mpq(1)


def rat(a, b=1) -> BigRat:
    """Build an exact rational from integers, strings or rationals."""
    return mpq(a, b) if b != 1 else mpq(a)


class QPoly:
    """Dense univariate polynomial with BigRat coefficients."""

    __slots__ = ("coeffs", "_prim")

    def __init__(self, coeffs: Iterable = ()):
        cs = [mpq(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)
        self._prim = None

    # -- constructors -----------------------------------------------------

    @staticmethod
    def const(c) -> "QPoly":
        return QPoly((mpq(c),))

    @staticmethod
    def var() -> "QPoly":
        return QPoly((_Q0, _Q1))

    @staticmethod
    def monomial(c, k: int) -> "QPoly":
        return QPoly((_Q0,) * k + (mpq(c),))

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INFINITY

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> BigRat:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> BigRat:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _Q0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, type(_Q0))):
            return self.coeffs == (QPoly.const(other)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- ring operations ----------------------------------------------------

    def __neg__(self) -> "QPoly":
        return QPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "QPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "QPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, (int, type(_Q0))):
            q = mpq(other)
            if q == 0:
                return QPoly()
            return QPoly(tuple(c * q for c in self.coeffs))
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly()
        if len(a) * len(b) >= 32:
            return self._mul_kronecker(other)
        out = [_Q0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return QPoly(out)

    def _mul_kronecker(self, other: "QPoly") -> "QPoly":
        """Multiply by packing both factors into one big integer each; the
        digit width is chosen so product coefficients cannot overlap."""
        pa, ca = self.primitive_int()
        pb, cb = other.primitive_int()
        A = [mpz(c) for c in pa.coeffs]
        B = [mpz(c) for c in pb.coeffs]
        ma = max(abs(c) for c in A)
        mb = max(abs(c) for c in B)
        bound = ma * mb * min(len(A), len(B))
        bits = int(bound).bit_length() + 2
        xi = mpz(1) << bits
        prod = _eval_int(A, xi) * _eval_int(B, xi)
        out = _lift_balanced(prod, xi)
        scale = ca * cb
        return QPoly(tuple(mpq(c) * scale for c in out))

    __rmul__ = __mul__

    def scale(self, q) -> "QPoly":
        return self * mpq(q)

    def __divmod__(self, other: "QPoly"):
        other = _coerce(other)
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        if self.degree < other.degree:
            return QPoly(), self
        r = list(self.coeffs)
        d = other.coeffs
        dd = len(d) - 1
        inv = 1 / d[-1]
        q = [_Q0] * (len(r) - dd)
        for k in range(len(r) - 1, dd - 1, -1):
            c = r[k]
            if c:
                c *= inv
                q[k - dd] = c
                for j in range(dd + 1):
                    r[k - dd + j] -= c * d[j]
        return QPoly(q), QPoly(r[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "QPoly") -> "QPoly":
        other = _coerce(other)
        if (len(self.coeffs) >= 16 and not other.is_zero()
                and other.degree <= self.degree):
            q = self._exact_div_eval(other)
            if q is not None:
                return q
        q, r = divmod(self, other)
        if not r.is_zero():
            raise DomainError("inexact polynomial division")
        return q

    def _exact_div_eval(self, other: "QPoly"):
        """Exact-division fast path: when other | self the identity
        self(xi) = other(xi) * q(xi) transfers to the evaluations, so one
        big-integer division plus a balanced lift recovers q.  The candidate
        is verified by multiplying back, so a too-small digit width can only
        cause a fallback, never a wrong result."""
        pa, ca = self.primitive_int()
        pb, cb = other.primitive_int()
        A = [mpz(c) for c in pa.coeffs]
        B = [mpz(c) for c in pb.coeffs]
        dq = len(A) - len(B)
        ha = max(abs(c) for c in A)
        bound = (ha + 1) * len(A) << (dq + 2)
        bits = int(bound).bit_length() + 2
        xi = mpz(1) << bits
        vb = _eval_int(B, xi)
        if vb == 0:
            return None
        qv, rem = divmod(_eval_int(A, xi), vb)
        if rem:
            return None
        t = QPoly(tuple(mpq(c) for c in _lift_balanced(qv, xi)))
        if t * pb != pa:
            return None
        return t * (ca / cb)

    def __pow__(self, k: int) -> "QPoly":
        if k < 0:
            raise DomainError("negative polynomial power")
        out = QPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- calculus and evaluation ---------------------------------------------

    def derivative(self) -> "QPoly":
        return QPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def __call__(self, point):
        if len(self.coeffs) > 8:
            q = mpq(point)
            if q.denominator == 1:
                # integer Horner on the primitive form skips the per-step
                # rational canonicalization
                prim, cont = self.primitive_int()
                p = mpz(q)
                acc = mpz(0)
                for c in reversed(prim.coeffs):
                    acc = acc * p + mpz(c)
                return mpq(acc) * cont
        acc = _Q0
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def eval_poly(self, p: "QPoly") -> "QPoly":
        """Composition self(p(x)) by Horner."""
        acc = QPoly()
        for c in reversed(self.coeffs):
            acc = acc * p + QPoly.const(c)
        return acc

    def taylor_shift(self, a) -> "QPoly":
        """self(x + a), classical O(d^2) shift."""
        a = mpq(a)
        if a == 0 or self.is_constant():
            return self
        # Synthetic division by (x - (-a)) repeatedly.
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n - 1):
            for k in range(n - 2, i - 1, -1):
                cs[k] += a * cs[k + 1]
        return QPoly(cs)

    # -- normal forms ------------------------------------------------------

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        inv = 1 / self.lc
        return QPoly(tuple(c * inv for c in self.coeffs))

    def primitive_int(self):
        """Return (primitive integer-coefficient poly as QPoly, content) with
        ``self == content * primitive`` and positive leading coefficient."""
        if self.is_zero():
            return self, _Q1
        if self._prim is not None:
            return self._prim
        den = mpz(1)  # lcm of coefficient denominators
        for c in self.coeffs:
            d = mpz(c.denominator)
            den = den * d // _gcd_mpz(den, d)
        ints = [mpz(c * den) for c in self.coeffs]
        g = mpz(0)
        for v in ints:
            g = _gcd_mpz(g, v)
        if ints[-1] < 0:
            g = -g
        prim = QPoly(tuple(mpq(v, g) for v in ints))
        self._prim = (prim, mpq(g, den))
        return self._prim

    # -- gcd machinery -------------------------------------------------------

    def gcd(self, other: "QPoly") -> "QPoly":
        """Monic gcd.

        Fast path: evaluate both arguments at one large integer, take the
        integer gcd and lift it back to a polynomial; the evaluation point
        is taken beyond four times the coefficient bound on any divisor, so
        a lifted candidate that divides both inputs is provably the gcd.
        Falls back to a primitive PRS over the integers."""
        a, b = self, other
        if a.is_zero():
            return b.monic()
        if b.is_zero():
            return a.monic()
        if a.degree == 0 or b.degree == 0:
            return QPoly.const(1)
        pa, _ = a.primitive_int()
        pb, _ = b.primitive_int()
        if pa.degree < pb.degree:
            pa, pb = pb, pa
        g = _gcd_heuristic(pa, pb)
        if g is not None:
            return g.monic()
        A = [mpz(c) for c in pa.coeffs]
        B = [mpz(c) for c in pb.coeffs]
        while B:
            R = _pseudo_rem_int(A, B)
            if not R:
                break
            g = mpz(0)
            for v in R:
                g = _gcd_mpz(g, v)
            A, B = B, [v // g for v in R]
        return QPoly(B or A).monic()

    def lcm(self, other: "QPoly") -> "QPoly":
        if self.is_zero() or other.is_zero():
            return QPoly()
        return (self * other).exact_div(self.gcd(other)).monic()

    def resultant(self, other: "QPoly") -> BigRat:
        """Res(self, other) via the Euclidean scheme over Q."""
        a, b = self, other
        if a.is_zero() or b.is_zero():
            return _Q0
        res = _Q1
        if a.degree < b.degree:
            if (a.degree * b.degree) % 2:
                res = -res
            a, b = b, a
        while True:
            if b.degree == 0:
                return res * b.lc ** a.degree if a.degree >= 0 else res
            r = a % b
            if r.is_zero():
                return _Q0
            res *= b.lc ** (a.degree - r.degree)
            if (a.degree * b.degree) % 2:
                res = -res
            a, b = b, r

    # -- printing ------------------------------------------------------------

    def __repr__(self):
        return f"QPoly({list(self.coeffs)!r})"


def _coerce(v):
    if isinstance(v, QPoly):
        return v
    if isinstance(v, (int, type(_Q0))):
        return QPoly.const(v)
    return NotImplemented


def _gcd_mpz(a, b):
    from gmpy2 import gcd

    return gcd(a, b)


def _eval_int(coeffs, xi):
    acc = mpz(0)
    for c in reversed(coeffs):
        acc = acc * xi + mpz(c)
    return acc


def _lift_balanced(v, xi):
    """Integer polynomial with balanced coefficients in (-xi/2, xi/2]
    evaluating to v at xi."""
    out = []
    half = xi >> 1
    v = mpz(v)
    while v:
        d = v % xi
        if d > half:
            d -= xi
        out.append(d)
        v = (v - d) // xi
    return out


def _divides_int(g, p) -> bool:
    """Does the integer polynomial g divide the integer polynomial p
    (coefficient lists, dense ascending)?"""
    lg = g[-1]
    r = list(p)
    while len(r) >= len(g):
        c = r[-1]
        if c % lg:
            return False
        q = c // lg
        off = len(r) - len(g)
        for j in range(len(g)):
            r[off + j] -= q * g[j]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return not r


def _gcd_heuristic(pa: QPoly, pb: QPoly):
    """Provable gcd of two primitive integer polynomials by evaluation at a
    single large point, or None when the lift fails (rare; the caller then
    uses the PRS).  Choosing the point beyond 4*(factor coefficient bound)
    makes a lifted candidate that divides both inputs equal to the gcd."""
    A = [mpz(c) for c in pa.coeffs]
    B = [mpz(c) for c in pb.coeffs]
    dmin = min(len(A), len(B)) - 1
    height = min(max(abs(c) for c in A), max(abs(c) for c in B))
    # crude but safe upper bound on the height of any divisor
    mignotte = (mpz(1) << dmin) * (dmin + 2) * height
    xi = 4 * mignotte + 4
    for _ in range(3):
        va, vb = _eval_int(A, xi), _eval_int(B, xi)
        if va == 0 or vb == 0:
            xi += 1
            continue
        cand = _lift_balanced(_gcd_mpz(va, vb), xi)
        # strip the integer content
        cg = mpz(0)
        for c in cand:
            cg = _gcd_mpz(cg, c)
        if cand[-1] < 0:
            cg = -cg
        cand = [c // cg for c in cand]
        if _divides_int(cand, A) and _divides_int(cand, B):
            return QPoly(tuple(mpq(c) for c in cand))
        xi = xi * 2 + 1
    return None


def _pseudo_rem_int(A, B):
    """Pseudo-remainder of integer coefficient lists (dense, ascending)."""
    db = len(B) - 1
    lb = B[-1]
    R = list(A)
    while len(R) - 1 >= db:
        c = R[-1]
        if c:
            R = [v * lb for v in R]
            off = len(R) - 1 - db
            for j in range(db + 1):
                R[off + j] -= c * B[j]
        R.pop()
        while R and R[-1] == 0:
            R.pop()
    return R


class QRat:
    """Reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        num = _coerce(num)
        den = QPoly.const(1) if den is None else _coerce(den)
        if den.is_zero():
            raise DomainError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = QPoly.const(1)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            if not den.is_one():
                inv = 1 / den.lc
                den = QPoly(tuple(c * inv for c in den.coeffs))
                num = num * inv
        self.num = num
        self.den = den

    # -- constructors / queries ---------------------------------------------

    @staticmethod
    def const(c) -> "QRat":
        return QRat(QPoly.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- field operations ------------------------------------------------------

    def __neg__(self):
        return QRat(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return QRat(self.num + other.num, self.den)
        return QRat(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        # cross-cancel before multiplying to limit growth
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1 = self.num if g1.is_one() else self.num.exact_div(g1)
        d2 = other.den if g1.is_one() else other.den.exact_div(g1)
        n2 = other.num if g2.is_one() else other.num.exact_div(g2)
        d1 = self.den if g2.is_one() else self.den.exact_div(g2)
        num = n1 * n2
        den = d1 * d2
        if not den.is_one():
            inv = 1 / den.lc
            den = QPoly(tuple(c * inv for c in den.coeffs))
            num = num * inv
        return QRat(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "QRat":
        if self.is_zero():
            raise DomainError("inverse of zero")
        return QRat(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce_rat(other) * self.inverse()

    def derivative(self) -> "QRat":
        return QRat(self.num.derivative() * self.den
                    - self.num * self.den.derivative(),
                    self.den * self.den)

    def __call__(self, point):
        d = self.den(point)
        if d == 0:
            raise DomainError("evaluation at a pole")
        return self.num(point) / d

    def taylor_shift(self, a) -> "QRat":
        return QRat(self.num.taylor_shift(a), self.den.taylor_shift(a))

    def __repr__(self):
        return f"QRat({self.num!r}, {self.den!r})"


def _coerce_rat(v):
    if isinstance(v, QRat):
        return v
    if isinstance(v, QPoly):
        return QRat(v, None, _reduced=True)
    if isinstance(v, (int, type(_Q0))):
        return QRat(QPoly.const(v), None, _reduced=True)
    return NotImplemented


def interpolate(points: Sequence, values: Sequence) -> QPoly:
    """Newton interpolation through ``(points[i], values[i])`` (exact)."""
    pts = [mpq(p) for p in points]
    if len(set(pts)) != len(pts):
        raise DomainError("interpolation nodes must be distinct")
    divided = [mpq(v) for v in values]
    m = len(pts)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (pts[i] - pts[i - j])
    out = QPoly()
    basis = QPoly.const(1)
    for i in range(m):
        out = out + basis * divided[i]
        basis = basis * QPoly((-pts[i], _Q1))
    return out
