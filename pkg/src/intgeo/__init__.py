"""Exact kinematic formulas for euclidean, hermitian and constant-curvature
isotropic spaces, with Monte Carlo verification on concrete convex bodies."""

__version__ = "0.1.0"

from .scalars import Rational, Scalar, LambdaScalar, omega, alpha

__all__ = ["Rational", "Scalar", "LambdaScalar", "omega", "alpha"]
