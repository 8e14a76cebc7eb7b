"""Right-angled Coxeter groups: word combinatorics, walls and tree-product embeddings."""

from .coloring import Coloring, chromatic_coloring, coloring_for, provide_coloring, validate_coloring
from .embed import (
    FinLabel,
    ProductPoint,
    SeparationParams,
    element_matrix,
    fin,
    mu,
    phi_c,
    product_distance,
    psi,
    reflection_matrix,
    sigma,
    tree_distance,
)
from .errors import (
    CapExceededError,
    ColoringError,
    ColourMismatchError,
    GroupDefinitionError,
    LevelMismatchError,
    MixedGroupsError,
    NotAReflectionError,
    RACGError,
    UnknownGeneratorError,
)
from .geometry import (
    Ball,
    Reflection,
    ball,
    crossing_walls,
    geodesic,
    in_boundary,
    in_halfspace,
    level,
    make_reflection,
    median,
    mirror_distance,
    wall_of_edge,
)
from .group import (
    CommutationGraph,
    GroupElement,
    colored_length,
    distance,
    in_centralizer,
    inverse,
    left_descent,
    length,
    multiply,
    parse_document,
    parse_group,
    reduce,
)
from .harness import SUITES, VerificationReport, builtin_group, run_suite
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
