"""Shared random generators for the property suites.

Everything is seeded; a failing case can be replayed from the loop index.
"""

import random

from gmpy2 import mpq

from hypertel.bivar import XPoly, XRat
from hypertel.poly import QPoly, QRat


def rand_q(rng, bound=9):
    return mpq(rng.randint(-bound, bound))


def rand_qpoly(rng, deg, bound=9, nonzero=False, monic=False):
    while True:
        coeffs = [rand_q(rng, bound) for _ in range(deg + 1)]
        if monic and deg >= 0:
            coeffs[-1] = mpq(1)
        p = QPoly(coeffs)
        if not nonzero or not p.is_zero():
            return p


def rand_qrat(rng, num_deg, den_deg, bound=9, nonzero=False):
    num = rand_qpoly(rng, num_deg, bound, nonzero=nonzero)
    den = rand_qpoly(rng, den_deg, bound, nonzero=True)
    return QRat(num, den)


def rand_nrat(rng, bound=9):
    # small rational functions of n used as XPoly coefficients
    num = rand_qpoly(rng, rng.randint(0, 2), bound)
    den = rand_qpoly(rng, rng.randint(0, 1), bound, nonzero=True)
    return QRat(num, den)


def rand_xpoly(rng, deg_x, bound=9, nonzero=False):
    while True:
        den = rand_qpoly(rng, rng.randint(0, 2), bound, nonzero=True)
        nums = [rand_qpoly(rng, rng.randint(0, 2), bound)
                for _ in range(deg_x + 1)]
        p = XPoly(tuple(nums), den)
        if not nonzero or not p.is_zero():
            return p


def rand_term(rng, max_h_deg=2, max_p_deg=2, max_st_deg=2, bound=9):
    """A random valid hyperexponential-term triple (P, H, ST)."""
    from hypertel.telescoping import build_term
    while True:
        hn = rand_qpoly(rng, rng.randint(0, max_h_deg), bound, nonzero=True)
        hd = rand_qpoly(rng, rng.randint(0, max_h_deg), bound, nonzero=True,
                        monic=bool(rng.getrandbits(1)))
        H = QRat(hn, hd)
        sn = rand_qpoly(rng, rng.randint(0, max_st_deg), bound)
        sd = rand_qpoly(rng, rng.randint(0, max_st_deg), bound, nonzero=True)
        if rng.random() < 0.3:
            # repeated factor in T exercises the Hermite branch
            sd = sd * rand_qpoly(rng, 1, bound, nonzero=True) ** 2
        ST = QRat(sn, sd)
        P = rand_xpoly(rng, rng.randint(0, max_p_deg), bound, nonzero=True)
        try:
            build_term(P, H, ST)
        except Exception:
            continue
        return P, H, ST


def seeded(seed):
    return random.Random(seed)
