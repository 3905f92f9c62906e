"""Exact toolkit for limiting shapes and asymptotic Hilbert polynomials of
symbolic powers of point/flat configurations in projective space."""

__version__ = "0.1.0"

from .rings import Polynomial, MonomialOrder, DEGREVLEX, compare, parse_polynomial
from .groebner import (
    Ideal,
    GroebnerBasis,
    GinResult,
    groebner_basis,
    initial_ideal,
    intersect_ideals,
    gin,
    regularity_surrogate,
    lbsr_fit,
)
from .staircase import MonomialStaircase
from .polyhedra import (
    RationalPolyhedron,
    newton_polyhedron,
    scale,
    convex_union_approximant,
    clip_to_simplex,
    volume,
    gamma_region,
)
from .configs import (
    PointConfig,
    FlatConfig,
    UnionConfig,
    ideal_of,
    symbolic_power,
    differential_membership_check,
)
from .asymptotics import (
    UniPoly,
    BiPoly,
    flats_hp,
    flats_hp_bivariate,
    ahp_flats,
    ahf_estimate,
    ahp_additivity_check,
    intersecting_lines_hp,
)
