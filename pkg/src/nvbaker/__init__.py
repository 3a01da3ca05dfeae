"""Exact arithmetic on dyadic rearrangements of the unit n-cube.

The library models bijections of [0,1)^n built from dyadic brick
partitions, provides the baker's map and brick-transposition generator
families, and factors any baker's map into a machine-verified word of
proper transpositions.
"""

from .errors import (
    DimensionMismatchError,
    ElementError,
    ExponentLimitError,
    FactorizationError,
    GeometryError,
    NvError,
    ParseError,
    PartitionError,
    RenderError,
    ResolutionError,
)
from .geometry import (
    MAX_EXPONENT,
    Brick,
    Cell,
    CellRelation,
    Partition,
    ValidationReport,
    brick_intersect,
    bricks_disjoint,
    cell_relation,
    common_refinement,
    partition_validate,
    peel_to_unit,
    tile_complement,
    unit_brick,
    unit_partition,
)
from .elements import (
    Element,
    Pair,
    Word,
    apply_point,
    coarsen,
    equals,
    equals_witness,
    identity,
    inverse,
    map_through,
    support,
    then,
)
from .generators import (
    BakerSpec,
    TranspositionSpec,
    is_baker_form,
    is_transposition_form,
    make_baker,
    make_transposition,
)
from .factorization import (
    FactorizationReport,
    ShrinkResult,
    cancel_disjoint_pair,
    factor_baker,
    factor_small_baker,
    shrink,
    split_baker,
    verify_word,
)
from .oracle import (
    GridSpec,
    Lcg64,
    RandomElementSpec,
    grid_equals,
    grid_witness,
    random_element,
)
from .formats import (
    load_element,
    parse_brick,
    parse_dyadic,
    parse_element,
    parse_partition,
    parse_tree_pair,
    parse_word,
    serialize_element,
    serialize_partition,
    serialize_word,
)
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "MAX_EXPONENT",
    "BakerSpec",
    "Brick",
    "Cell",
    "CellRelation",
    "DimensionMismatchError",
    "Element",
    "ElementError",
    "ExponentLimitError",
    "FactorizationError",
    "FactorizationReport",
    "GeometryError",
    "GridSpec",
    "Lcg64",
    "NvError",
    "Pair",
    "ParseError",
    "Partition",
    "PartitionError",
    "RandomElementSpec",
    "RenderError",
    "ResolutionError",
    "ShrinkResult",
    "TranspositionSpec",
    "ValidationReport",
    "Word",
    "apply_point",
    "brick_intersect",
    "bricks_disjoint",
    "cancel_disjoint_pair",
    "cell_relation",
    "coarsen",
    "common_refinement",
    "equals",
    "equals_witness",
    "factor_baker",
    "factor_small_baker",
    "grid_equals",
    "grid_witness",
    "identity",
    "inverse",
    "is_baker_form",
    "is_transposition_form",
    "load_element",
    "make_baker",
    "make_transposition",
    "map_through",
    "parse_brick",
    "parse_dyadic",
    "parse_element",
    "parse_partition",
    "parse_tree_pair",
    "parse_word",
    "partition_validate",
    "peel_to_unit",
    "random_element",
    "render_svg",
    "serialize_element",
    "serialize_partition",
    "serialize_word",
    "shrink",
    "split_baker",
    "support",
    "tile_complement",
    "then",
    "unit_brick",
    "unit_partition",
    "verify_word",
]
