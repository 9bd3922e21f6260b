"""hypertel: exact creative telescoping for hypergeometric-hyperexponential
terms, with an application to recurrences for compositional inverses."""

from .poly import BigRat, MINUS_INFINITY, QPoly, QRat, rat
from .bivar import NRat, XPoly, XRat

__all__ = [
    "BigRat",
    "MINUS_INFINITY",
    "NRat",
    "QPoly",
    "QRat",
    "XPoly",
    "XRat",
    "rat",
]

__version__ = "0.1.0"
