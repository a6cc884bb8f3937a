from algebra.exceptions import WeilabError
from algebra.polynomials import RingContext, TruncPoly, parse_poly, render_poly
from algebra.linalg import Subspace

__all__ = [
    'WeilabError',
    'RingContext',
    'TruncPoly',
    'parse_poly',
    'render_poly',
    'Subspace',
]
