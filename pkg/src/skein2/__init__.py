"""skein2: exact two-parameter planar skein calculus engine."""

from .scalars import LaurentPoly2, RatFunc2, qint, parse_scalar

__all__ = ["LaurentPoly2", "RatFunc2", "qint", "parse_scalar"]
