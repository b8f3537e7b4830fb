from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from chebfib.arith import Poly, RatFunc
from chebfib.quadext import CHEB_FIB_CTX, ExtElem

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def polys(max_degree=12, lo=-9, hi=9):
    return st.lists(st.integers(lo, hi), max_size=max_degree + 1).map(Poly)


def nonzero_polys(max_degree=6):
    return polys(max_degree).filter(lambda p: not p.is_zero())


def ratfuncs(max_degree=3):
    return st.builds(RatFunc, polys(max_degree, -5, 5), nonzero_polys(max_degree))


def ext_elems(max_degree=2):
    comp = polys(max_degree, -4, 4)
    return st.builds(lambda a, b, c, d: ExtElem(CHEB_FIB_CTX, a, b, c, d), comp, comp, comp, comp)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7).map(Fraction)
