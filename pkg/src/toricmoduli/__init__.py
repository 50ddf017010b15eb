"""Euler characteristics of moduli spaces of torus-equivariant vector
bundles on P^2, computed exactly from filtrations, quiver stability and
lattice-point counts."""

from .exactgeom import Polyhedron, extremal_rays, extreme_points
from .rank2 import chi_rank2, hurwitz, series_rank2
from .rank3 import chi_rank3, series_rank3
from .series import EulerSeries, InvalidResidue

__version__ = "0.1.0"
