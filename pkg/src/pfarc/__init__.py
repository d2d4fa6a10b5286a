"""Exact arithmetic for derived Pfaffians on arc spaces."""
from .linalg import BACKEND
from .ring import AGen, Poly, XGen, avar, dbar, xvar
from .pfaffian import jseq_value, pfaffian, pfaffian_derivative
from .order import ESeq, JSeq, is_greater, largest_dominating
from .standard import StandardProduct, canonical_lift, enumerate_standard
from .quotient import straighten, verify_standard_basis
from .jet import qh, verify_injectivity, verify_invariance, verify_leading

__version__ = "0.1.0"
