"""Dynamics of the (2,1)-rational map f(x) = (x^2+ax+b)/(x+c) over Q_p."""

from padyn.padic import (
    Ball,
    CappedPadic,
    DivisionByZero,
    PadicNumber,
    PrecisionExhausted,
    PrimeMismatch,
    Radius,
    Sphere,
    in_ball,
    in_sphere,
    norm,
    valuation,
)
from padyn.rational_map import (
    ConjugatedMap,
    DynamicsProfile,
    MapParams,
    PoleHit,
    conjugate_to_unit_sphere,
    evaluate,
    fixed_point,
    orbit,
    profile,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "CappedPadic",
    "ConjugatedMap",
    "DivisionByZero",
    "DynamicsProfile",
    "MapParams",
    "PadicNumber",
    "PoleHit",
    "PrecisionExhausted",
    "PrimeMismatch",
    "Radius",
    "Sphere",
    "conjugate_to_unit_sphere",
    "evaluate",
    "fixed_point",
    "in_ball",
    "in_sphere",
    "norm",
    "orbit",
    "profile",
    "valuation",
    "__version__",
]
