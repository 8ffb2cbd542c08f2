"""Ideal tetrahedra in hyperbolic 3-space.

Submodules: :mod:`minkowski` (the (3,1) form), :mod:`exterior` (exterior
powers and the Hodge star), :mod:`tetra` (doubly stochastic coordinates),
:mod:`lobachevsky`, :mod:`seidel` (determinant / permanent coordinates and the
volume) and :mod:`cli`.
"""

from . import errors, exterior, lobachevsky, minkowski, seidel, tetra
from ._backend import BACKEND
from .lobachevsky import lobachevsky as lob
from .seidel import SeidelCoords, forward, invert, volume
from .tetra import PlaneCoords, TriangleCoords, synthesize

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "PlaneCoords",
    "SeidelCoords",
    "TriangleCoords",
    "errors",
    "exterior",
    "forward",
    "invert",
    "lob",
    "lobachevsky",
    "minkowski",
    "seidel",
    "synthesize",
    "tetra",
    "volume",
]
