"""The bivariate tower: Q(n), Q(n)[x] and Q(n)(x).

``NRat`` (an element of Q(n)) is a :class:`~hypertel.poly.QRat` whose
polynomials live in the variable ``n``.  :class:`XPoly` is a dense polynomial
in ``x`` with NRat coefficients; it is stored over a single common
denominator in ``n`` so that arithmetic does one gcd per operation instead of
one per coefficient.  :class:`XRat` is a reduced fraction of two XPoly with
monic denominator.

All values are immutable; every operation returns a fresh value.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import DomainError
from .poly import MINUS_INFINITY, QPoly, QRat

#: Element of Q(n): a reduced rational function in the variable n.
NRat = QRat

_ONE_N = QPoly.const(1)


def _content_gcd(polys: Iterable[QPoly]) -> QPoly:
    """Monic gcd of a family of polynomials, with early exit at 1."""
    g = QPoly()
    for p in polys:
        if p.is_zero():
            continue
        g = p.monic() if g.is_zero() else g.gcd(p)
        if g.is_one():
            return g
    return g


class XPoly:
    """Polynomial in x over Q(n), stored as (nums, den):

        self = (nums[0] + nums[1]*x + ...) / den

    with nums[i], den in Q[n], den monic, gcd(den, gcd(nums)) = 1 and the
    top num nonzero (or nums empty for the zero polynomial).
    """

    __slots__ = ("nums", "den")

    def __init__(self, nums: Iterable[QPoly] = (), den: QPoly = _ONE_N,
                 _reduced: bool = False):
        ns = list(nums)
        while ns and ns[-1].is_zero():
            ns.pop()
        if den.is_zero():
            raise DomainError("XPoly with zero denominator")
        if not ns:
            self.nums, self.den = (), _ONE_N
            return
        if not _reduced:
            if not den.is_one():
                g = _content_gcd([den] + ns)
                if not g.is_one():
                    den = den.exact_div(g)
                    ns = [p.exact_div(g) for p in ns]
            if not den.is_one():
                inv = 1 / den.lc
                den = QPoly(tuple(c * inv for c in den.coeffs))
                ns = [p * inv for p in ns]
        self.nums = tuple(ns)
        self.den = den

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "XPoly":
        return XPoly()

    @staticmethod
    def one() -> "XPoly":
        return XPoly((QPoly.const(1),), _reduced=True)

    @staticmethod
    def const(c) -> "XPoly":
        """Constant in x; c may be int/mpq, a QPoly in n, or an NRat."""
        if isinstance(c, QRat):
            return XPoly((c.num,), c.den)
        if isinstance(c, QPoly):
            return XPoly((c,), _reduced=True)
        return XPoly((QPoly.const(c),), _reduced=True)

    @staticmethod
    def var() -> "XPoly":
        return XPoly((QPoly(), QPoly.const(1)), _reduced=True)

    @staticmethod
    def monomial(c, k: int) -> "XPoly":
        return XPoly.const(c) * XPoly((QPoly(),) * k + (QPoly.const(1),),
                                      _reduced=True)

    @staticmethod
    def from_x_poly(p: QPoly) -> "XPoly":
        """Lift a polynomial in x with rational coefficients."""
        return XPoly(tuple(QPoly.const(c) for c in p.coeffs), _reduced=True)

    @staticmethod
    def from_coeffs(coeffs: Sequence[QRat]) -> "XPoly":
        """Build from explicit NRat coefficients (common denominator = lcm)."""
        den = _ONE_N
        for c in coeffs:
            den = den.lcm(c.den)
        nums = [c.num * den.exact_div(c.den) for c in coeffs]
        return XPoly(nums, den)

    # -- queries -------------------------------------------------------------

    @property
    def degree(self):
        return len(self.nums) - 1 if self.nums else MINUS_INFINITY

    def is_zero(self) -> bool:
        return not self.nums

    def is_one(self) -> bool:
        return (len(self.nums) == 1 and self.den.is_one()
                and self.nums[0].is_one())

    def is_n_free(self) -> bool:
        return self.den.is_one() and all(p.is_constant() for p in self.nums)

    def coeff(self, k: int) -> NRat:
        if not 0 <= k < len(self.nums):
            return QRat.const(0)
        return QRat(self.nums[k], self.den)

    @property
    def coeffs(self) -> tuple:
        return tuple(self.coeff(k) for k in range(len(self.nums)))

    @property
    def lc(self) -> NRat:
        if not self.nums:
            raise DomainError("zero polynomial has no leading coefficient")
        return QRat(self.nums[-1], self.den)

    def rdeg_n(self):
        """Rational degree in n: (max numerator degree, denominator degree).

        Returns (MINUS_INFINITY, 0) for the zero polynomial."""
        if not self.nums:
            return (MINUS_INFINITY, 0)
        return (max(p.degree for p in self.nums), self.den.degree)

    def to_x_poly(self) -> QPoly:
        """Drop to Q[x]; requires the value to be free of n."""
        if not self.is_n_free():
            raise DomainError("value depends on n")
        return QPoly(tuple(p.coeff(0) for p in self.nums))

    def __bool__(self):
        return bool(self.nums)

    def __eq__(self, other):
        other = _coerce_x(other)
        if other is NotImplemented:
            return NotImplemented
        return self.nums == other.nums and self.den == other.den

    def __hash__(self):
        return hash((self.nums, self.den))

    # -- arithmetic ------------------------------------------------------------

    def __neg__(self):
        return XPoly(tuple(-p for p in self.nums), self.den, _reduced=True)

    def __add__(self, other):
        other = _coerce_x(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            a, b = self.nums, other.nums
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for i, p in enumerate(b):
                out[i] = out[i] + p
            return XPoly(out, self.den)
        a = [p * other.den for p in self.nums]
        b = [p * self.den for p in other.nums]
        if len(a) < len(b):
            a, b = b, a
        for i, p in enumerate(b):
            a[i] = a[i] + p
        return XPoly(a, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_x(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, type(mpq(0)))):
            return XPoly(tuple(p * mpq(other) for p in self.nums), self.den)
        if isinstance(other, QRat):
            return XPoly(tuple(p * other.num for p in self.nums),
                         self.den * other.den)
        other = _coerce_x(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.nums, other.nums
        if not a or not b:
            return XPoly()
        out = [QPoly() for _ in range(len(a) + len(b) - 1)]
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = out[i + j] + ai * bj
        return XPoly(out, self.den * other.den)

    __rmul__ = __mul__

    def scale_n(self, p: QPoly) -> "XPoly":
        """Multiply by a polynomial in n."""
        if p.is_zero():
            return XPoly()
        return XPoly(tuple(q * p for q in self.nums), self.den)

    def div_n(self, c: NRat) -> "XPoly":
        """Divide by a nonzero element of Q(n)."""
        if c.is_zero():
            raise DomainError("division by zero in Q(n)")
        return XPoly(tuple(p * c.den for p in self.nums), self.den * c.num)

    def monic(self) -> "XPoly":
        if self.is_zero():
            return self
        return self.div_n(self.lc)

    def __divmod__(self, other):
        other = _coerce_x(other)
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        if other.is_n_free():
            return self._divmod_n_free(other.to_x_poly())
        q = XPoly()
        r = self
        d = other.degree
        lcb = other.lc
        while (not r.is_zero()) and r.degree >= d:
            t = XPoly.monomial(r.lc / lcb, r.degree - d)
            q = q + t
            r = r - t * other
        return q, r

    def _divmod_n_free(self, d: QPoly):
        """Division by a divisor free of n; keeps the common denominator."""
        if self.degree < d.degree:
            return XPoly(), self
        r = list(self.nums)
        dd = d.degree
        inv = 1 / d.lc
        q = [QPoly()] * (len(r) - dd)
        for k in range(len(r) - 1, dd - 1, -1):
            c = r[k]
            if c:
                c = c * inv
                q[k - dd] = c
                for j in range(dd + 1):
                    r[k - dd + j] = r[k - dd + j] - c * d.coeff(j)
        return XPoly(q, self.den), XPoly(r[:dd], self.den)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "XPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise DomainError("inexact polynomial division")
        return q

    def __pow__(self, k: int) -> "XPoly":
        if k < 0:
            raise DomainError("negative polynomial power")
        out = XPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def derivative(self) -> "XPoly":
        return XPoly(tuple(p * i for i, p in enumerate(self.nums))[1:],
                     self.den, _reduced=True)

    # -- gcd over Q(n)[x] -------------------------------------------------------

    def primitive_n(self) -> "XPoly":
        """Strip the content in n: divide out gcd of the numerators and drop
        the denominator.  The result generates the same ideal in Q(n)[x]."""
        if self.is_zero():
            return self
        g = _content_gcd(self.nums)
        if g.is_one():
            return XPoly(self.nums, _ONE_N, _reduced=True)
        return XPoly(tuple(p.exact_div(g) for p in self.nums), _ONE_N)

    def gcd(self, other: "XPoly") -> "XPoly":
        """Monic gcd in Q(n)[x], by a primitive PRS over Q[n]."""
        a, b = self, other
        if a.is_zero():
            return b.monic()
        if b.is_zero():
            return a.monic()
        A = a.primitive_n()
        B = b.primitive_n()
        if A.degree < B.degree:
            A, B = B, A
        while not B.is_zero():
            R = _pseudo_rem_x(A, B)
            if R.is_zero():
                break
            A, B = B, R.primitive_n()
        return (B if not B.is_zero() else A).monic()

    # -- substitutions ------------------------------------------------------------

    def shift_n(self, i: int) -> "XPoly":
        """Substitute n -> n + i."""
        if i == 0:
            return self
        return XPoly(tuple(p.taylor_shift(i) for p in self.nums),
                     self.den.taylor_shift(i))

    def eval_n(self, n0) -> QPoly:
        """Evaluate the coefficients at n = n0, giving a poly in Q[x]."""
        n0 = mpq(n0)
        d = self.den(n0)
        if d == 0:
            raise DomainError("denominator vanishes at this n")
        inv = 1 / d
        return QPoly(tuple(p(n0) * inv for p in self.nums))

    def __repr__(self):
        return f"XPoly({list(self.nums)!r}, den={self.den!r})"


def _coerce_x(v):
    if isinstance(v, XPoly):
        return v
    if isinstance(v, (QRat, QPoly, int, type(mpq(0)))):
        return XPoly.const(v)
    return NotImplemented


def _pseudo_rem_x(A: XPoly, B: XPoly) -> XPoly:
    """Pseudo-remainder of content-primitive elements of Q[n][x]."""
    db = B.degree
    lb = B.nums[-1]
    R = list(A.nums)
    while len(R) - 1 >= db:
        c = R[-1]
        if not c.is_zero():
            R = [p * lb for p in R]
            off = len(R) - 1 - db
            for j in range(db + 1):
                R[off + j] = R[off + j] - c * B.nums[j]
        R.pop()
        while R and R[-1].is_zero():
            R.pop()
    return XPoly(R, _ONE_N, _reduced=True)


class XRat:
    """Reduced element of Q(n)(x) with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: XPoly, den: XPoly = None, _reduced: bool = False):
        num = _coerce_x(num)
        den = XPoly.one() if den is None else _coerce_x(den)
        if den.is_zero():
            raise DomainError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = XPoly.one()
            else:
                g = num.gcd(den)
                if not (g.is_one() or g.degree == 0):
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                if not den.is_one():
                    lc = den.lc
                    den = den.div_n(lc)
                    num = num.div_n(lc)
        self.num = num
        self.den = den

    @staticmethod
    def zero() -> "XRat":
        return XRat(XPoly.zero(), _reduced=True)

    @staticmethod
    def from_qrat_x(f: QRat) -> "XRat":
        """Lift a rational function of x with rational coefficients."""
        return XRat(XPoly.from_x_poly(f.num), XPoly.from_x_poly(f.den),
                    _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = _coerce_xr(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return XRat(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        other = _coerce_xr(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return XRat(self.num + other.num, self.den)
        return XRat(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_xr(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = _coerce_xr(other)
        if other is NotImplemented:
            return NotImplemented
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1 = self.num if g1.degree <= 0 else self.num.exact_div(g1)
        d2 = other.den if g1.degree <= 0 else other.den.exact_div(g1)
        n2 = other.num if g2.degree <= 0 else other.num.exact_div(g2)
        d1 = self.den if g2.degree <= 0 else self.den.exact_div(g2)
        num = n1 * n2
        den = d1 * d2
        if not den.is_one():
            lc = den.lc
            den = den.div_n(lc)
            num = num.div_n(lc)
        return XRat(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "XRat":
        if self.is_zero():
            raise DomainError("inverse of zero")
        return XRat(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce_xr(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce_xr(other) * self.inverse()

    def derivative(self) -> "XRat":
        return XRat(self.num.derivative() * self.den
                    - self.num * self.den.derivative(),
                    self.den * self.den)

    def shift_n(self, i: int) -> "XRat":
        if i == 0:
            return self
        return XRat(self.num.shift_n(i), self.den.shift_n(i))

    def eval_n(self, n0) -> QRat:
        return QRat(self.num.eval_n(n0), self.den.eval_n(n0))

    def __repr__(self):
        return f"XRat({self.num!r}, {self.den!r})"


def _coerce_xr(v):
    if isinstance(v, XRat):
        return v
    x = _coerce_x(v)
    if x is NotImplemented:
        return NotImplemented
    return XRat(x, None, _reduced=True)
