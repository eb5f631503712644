"""Boundary-strata homology of genus-zero marked-curve moduli spaces,
weight reductions, and pushforward dynamics of Hurwitz correspondences."""

__version__ = "0.1.0"
