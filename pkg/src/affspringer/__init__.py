"""Torus fixed points of components of the type-A equivalued affine Springer fiber."""

from .weyl import AffineWeylElement, enumerate_F, parse_element
from .springer import SpectralParameters, default_spectral
from .certificate import Verdict, fixed_point_set, nonvanishing_verdict

__version__ = "0.1.0"

__all__ = ["AffineWeylElement", "SpectralParameters", "Verdict", "default_spectral", "enumerate_F",
           "fixed_point_set", "nonvanishing_verdict", "parse_element"]
