"""Shared builders and hypothesis strategies for the test suite."""

from hypothesis import strategies as st

from strongpoly import LaurentPoly, Ring, ZZ


def mk(nvars, terms, laurent=False, domain=ZZ):
    """Polynomial from an exponent-tuple -> coefficient mapping."""
    return LaurentPoly(Ring(nvars, laurent, domain), dict(terms))


def poly_st(nvars=2, laurent=False, max_exp=3, max_terms=5, max_coeff=9, min_terms=0):
    """Strategy for random polynomials over ZZ."""
    lo = -max_exp if laurent else 0
    mono = st.tuples(*([st.integers(lo, max_exp)] * nvars))
    coeff = st.integers(-max_coeff, max_coeff).filter(bool)
    ring = Ring(nvars, laurent, ZZ)
    return st.dictionaries(mono, coeff, min_size=min_terms, max_size=max_terms).map(
        lambda d: LaurentPoly(ring, d)
    )


def nonzero_poly_st(nvars=2, laurent=False, max_exp=3, max_terms=5, max_coeff=9):
    return poly_st(nvars, laurent, max_exp, max_terms, max_coeff, min_terms=1)
