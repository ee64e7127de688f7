"""Exact computation of irreducible lattice points of polytopes, parallelepiped
covers, counting bounds and minimal teaching sets of threshold functions."""
from .errors import (CapacityError, DegenerateError, DimensionError, DomainError, EmptyError,
                     IrrPointsError, LinealityError, SingularMatrixError, UnboundedError)
from .polytope import (Box, HPolytope, LatticeSet, contains, enumerate_lattice,
                       integer_hull_vertices, irreducible_points, is_irreducible, vertices)
from .covering import cover_polytope, cover_simplex, partition_box, triangulate, Simplex
from .threshold import ThresholdFn, TeachingSet, essential, rationalize, sigma, teaching_set
from .kernels import BACKEND

__version__ = "0.1.0"
