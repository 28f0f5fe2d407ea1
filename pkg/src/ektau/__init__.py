"""Geometry of the homogeneous 3-manifolds E(kappa, tau) with kappa <= 0.

Subpackages by topic: core (model, frame, connection), geodesics (ODE and
closed forms, heights, distance), balls (Monte Carlo volumes and growth
fits), graphs (vertical graphs and area bounds), surfaces (the explicit
examples), growth (area-growth measurement harness) and cli.
"""

from .core import BasePoint, FrameVector, PointE, SpaceParams
from .errors import (
    ConvergenceError,
    EktauError,
    HypothesisViolationError,
    ModelDomainError,
    UnsupportedSpaceError,
)

__all__ = [
    "SpaceParams",
    "PointE",
    "BasePoint",
    "FrameVector",
    "EktauError",
    "ModelDomainError",
    "ConvergenceError",
    "UnsupportedSpaceError",
    "HypothesisViolationError",
]

__version__ = "0.1.0"
