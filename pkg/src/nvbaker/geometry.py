"""Dyadic intervals, bricks, and partitions of the unit n-cube.

All geometry is exact: a cell is the half-open interval [k/2^e, (k+1)/2^e)
stored as the integer pair (e, k), and a brick is a product of one cell per
axis. Two dyadic cells are always nested or disjoint, which is what makes
partition refinement and the rest of the library purely combinatorial.

Fractions appear only at the boundary (reporting endpoints, measures, point
membership); every decision procedure runs on integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    DimensionMismatchError,
    ExponentLimitError,
    GeometryError,
    PartitionError,
)

# Hard ceiling on cell exponents. Every operation that could deepen a cell
# goes through Cell, so enforcing the bound in one place guards the whole
# library against runaway refinement.
MAX_EXPONENT = 64


class CellRelation(Enum):
    DISJOINT = "disjoint"
    EQUAL = "equal"
    A_INSIDE_B = "a_inside_b"
    B_INSIDE_A = "b_inside_a"


@dataclass(frozen=True)
class Cell:
    """Half-open dyadic interval [numerator/2^exponent, (numerator+1)/2^exponent)."""

    exponent: int
    numerator: int

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise GeometryError(f"cell exponent must be >= 0, got {self.exponent}")
        if self.exponent > MAX_EXPONENT:
            raise ExponentLimitError(
                f"cell exponent {self.exponent} exceeds the limit {MAX_EXPONENT}"
            )
        if not 0 <= self.numerator < (1 << self.exponent):
            raise GeometryError(
                f"cell numerator {self.numerator} out of range for exponent {self.exponent}"
            )

    @property
    def lo(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    @property
    def hi(self) -> Fraction:
        return Fraction(self.numerator + 1, 1 << self.exponent)

    @property
    def length(self) -> Fraction:
        return Fraction(1, 1 << self.exponent)

    def split(self) -> tuple["Cell", "Cell"]:
        """Halve into (lower, upper) children."""
        e, k = self.exponent + 1, self.numerator * 2
        return Cell(e, k), Cell(e, k + 1)

    def double(self) -> "Cell":
        """The parent cell one level up."""
        if self.exponent == 0:
            raise GeometryError("the unit interval has no parent cell")
        return Cell(self.exponent - 1, self.numerator >> 1)

    def sibling(self) -> "Cell":
        """The other child of this cell's parent."""
        if self.exponent == 0:
            raise GeometryError("the unit interval has no sibling")
        return Cell(self.exponent, self.numerator ^ 1)

    @property
    def is_lower_child(self) -> bool:
        if self.exponent == 0:
            raise GeometryError("the unit interval is not a child")
        return self.numerator % 2 == 0

    def contains_value(self, x: Fraction) -> bool:
        return self.lo <= x < self.hi

    def sort_key(self) -> tuple[Fraction, int]:
        return (self.lo, self.exponent)

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.exponent}"


def cell_relation(a: Cell, b: Cell) -> CellRelation:
    """Classify two dyadic cells. They are never partially overlapping."""
    if a.exponent == b.exponent:
        return CellRelation.EQUAL if a.numerator == b.numerator else CellRelation.DISJOINT
    if a.exponent > b.exponent:
        # a is the finer cell; it sits inside b iff truncating matches.
        inside = (a.numerator >> (a.exponent - b.exponent)) == b.numerator
        return CellRelation.A_INSIDE_B if inside else CellRelation.DISJOINT
    inside = (b.numerator >> (b.exponent - a.exponent)) == a.numerator
    return CellRelation.B_INSIDE_A if inside else CellRelation.DISJOINT


@dataclass(frozen=True)
class Brick:
    """Product of one dyadic cell per axis: a half-open box in [0,1)^n."""

    cells: tuple[Cell, ...]

    def __post_init__(self) -> None:
        if not self.cells:
            raise GeometryError("a brick needs at least one axis")

    @property
    def dimension(self) -> int:
        return len(self.cells)

    @property
    def measure(self) -> Fraction:
        m = Fraction(1)
        for c in self.cells:
            m *= c.length
        return m

    @property
    def diameter(self) -> Fraction:
        """Longest side (the l-infinity diameter)."""
        return max(c.length for c in self.cells)

    @property
    def is_unit(self) -> bool:
        return all(c.exponent == 0 for c in self.cells)

    def side(self, axis: int) -> Cell:
        self._check_axis(axis)
        return self.cells[axis]

    def split(self, axis: int) -> tuple["Brick", "Brick"]:
        """Halve along one axis into (lower, upper)."""
        self._check_axis(axis)
        lo, hi = self.cells[axis].split()
        return self.replace(axis, lo), self.replace(axis, hi)

    def double(self, axis: int) -> "Brick":
        self._check_axis(axis)
        return self.replace(axis, self.cells[axis].double())

    def sibling(self, axis: int) -> "Brick":
        self._check_axis(axis)
        return self.replace(axis, self.cells[axis].sibling())

    def replace(self, axis: int, cell: Cell) -> "Brick":
        self._check_axis(axis)
        cells = list(self.cells)
        cells[axis] = cell
        return Brick(tuple(cells))

    def contains_point(self, point: Sequence[Fraction]) -> bool:
        if len(point) != self.dimension:
            raise DimensionMismatchError(
                f"point has {len(point)} coordinates, brick has {self.dimension}"
            )
        return all(c.contains_value(x) for c, x in zip(self.cells, point))

    def contains_brick(self, other: "Brick") -> bool:
        _check_same_dimension(self, other)
        return all(
            cell_relation(oc, sc) in (CellRelation.EQUAL, CellRelation.A_INSIDE_B)
            for oc, sc in zip(other.cells, self.cells)
        )

    def sort_key(self) -> tuple:
        return tuple(itertools.chain.from_iterable(c.sort_key() for c in self.cells))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.cells)

    def _check_axis(self, axis: int) -> None:
        if not 0 <= axis < self.dimension:
            raise GeometryError(
                f"axis {axis} out of range for dimension {self.dimension}"
            )


def _check_same_dimension(a: Brick, b: Brick) -> None:
    if a.dimension != b.dimension:
        raise DimensionMismatchError(
            f"bricks of dimensions {a.dimension} and {b.dimension}"
        )


def brick_intersect(a: Brick, b: Brick) -> Brick | None:
    """Intersection of two bricks, or None when they are disjoint.

    Per axis the cells are nested or disjoint, so the intersection is the
    finer cell on every axis or empty.
    """
    _check_same_dimension(a, b)
    cells = []
    for ca, cb in zip(a.cells, b.cells):
        rel = cell_relation(ca, cb)
        if rel is CellRelation.DISJOINT:
            return None
        cells.append(ca if rel in (CellRelation.EQUAL, CellRelation.A_INSIDE_B) else cb)
    return Brick(tuple(cells))


def bricks_disjoint(a: Brick, b: Brick) -> bool:
    return brick_intersect(a, b) is None


@dataclass(frozen=True)
class Partition:
    """A set of pairwise-disjoint bricks covering [0,1)^n, stored sorted."""

    bricks: tuple[Brick, ...]

    def __post_init__(self) -> None:
        if not self.bricks:
            raise PartitionError("a partition needs at least one brick")
        object.__setattr__(
            self, "bricks", tuple(sorted(self.bricks, key=Brick.sort_key))
        )
        dim = self.bricks[0].dimension
        for b in self.bricks:
            if b.dimension != dim:
                raise DimensionMismatchError("bricks of mixed dimensions in a partition")

    @property
    def dimension(self) -> int:
        return self.bricks[0].dimension

    def __len__(self) -> int:
        return len(self.bricks)

    def __iter__(self) -> Iterator[Brick]:
        return iter(self.bricks)

    def __contains__(self, brick: Brick) -> bool:
        return brick in self.bricks


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a partition check; falsy when problems were found."""

    ok: bool
    problems: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def partition_validate(bricks: Iterable[Brick]) -> ValidationReport:
    """Check disjointness and total measure 1, naming each violation."""
    items = list(bricks)
    problems: list[str] = []
    if not items:
        return ValidationReport(False, ("no bricks given",))
    dim = items[0].dimension
    for b in items[1:]:
        if b.dimension != dim:
            problems.append(f"mixed dimensions: {dim} and {b.dimension}")
            return ValidationReport(False, tuple(problems))
    for i, j in itertools.combinations(range(len(items)), 2):
        if not bricks_disjoint(items[i], items[j]):
            problems.append(f"bricks overlap: {items[i]} and {items[j]}")
    total = sum((b.measure for b in items), Fraction(0))
    if total != 1:
        problems.append(f"total measure is {total}, expected 1")
    return ValidationReport(not problems, tuple(problems))


def unit_brick(dimension: int) -> Brick:
    if dimension < 1:
        raise GeometryError(f"dimension must be >= 1, got {dimension}")
    return Brick(tuple(Cell(0, 0) for _ in range(dimension)))


def unit_partition(dimension: int) -> Partition:
    return Partition((unit_brick(dimension),))


def common_refinement(p: Partition, q: Partition) -> Partition:
    """The coarsest partition refining both: all nonempty pairwise meets."""
    if p.dimension != q.dimension:
        raise DimensionMismatchError(
            f"partitions of dimensions {p.dimension} and {q.dimension}"
        )
    pieces = []
    for a in p:
        for b in q:
            meet = brick_intersect(a, b)
            if meet is not None:
                pieces.append(meet)
    return Partition(tuple(pieces))


def peel_to_unit(brick: Brick) -> list[Brick]:
    """Tile the complement of a brick with its successive doubling siblings.

    Walk the brick up to the unit cube; at each step double along the axis
    whose cell is currently finest (ties broken by the lowest axis index) and
    emit the sibling that the doubling absorbs. The emitted bricks tile
    [0,1)^n minus the input exactly.
    """
    out: list[Brick] = []
    cur = brick
    while not cur.is_unit:
        axis = max(
            range(cur.dimension),
            key=lambda a: (cur.cells[a].exponent, -a),
        )
        out.append(cur.sibling(axis))
        cur = cur.double(axis)
    return out


def tile_complement(dimension: int, holes: Sequence[Brick]) -> list[Brick]:
    """Tile [0,1)^n minus the given disjoint holes with dyadic bricks.

    Recursive descent from the unit cube: a region disjoint from every hole
    is emitted whole, a region inside a hole is dropped, anything else is
    halved along the first axis where some intersecting hole is strictly
    thinner than the region.
    """
    for b in holes:
        if b.dimension != dimension:
            raise DimensionMismatchError(
                f"hole of dimension {b.dimension} in a {dimension}-cube"
            )
    for i, j in itertools.combinations(range(len(holes)), 2):
        if not bricks_disjoint(holes[i], holes[j]):
            raise GeometryError(f"holes overlap: {holes[i]} and {holes[j]}")

    out: list[Brick] = []

    def descend(region: Brick) -> None:
        live = [h for h in holes if brick_intersect(region, h) is not None]
        if not live:
            out.append(region)
            return
        if any(h.contains_brick(region) for h in live):
            return
        for axis in range(dimension):
            rc = region.cells[axis]
            if any(h.cells[axis].exponent > rc.exponent for h in live):
                lo, hi = region.split(axis)
                descend(lo)
                descend(hi)
                return
        # A live hole that is no finer than the region on any axis contains
        # it (intersecting cells nest), so one of the branches above ran.
        raise AssertionError(f"unreachable: no split axis for {region}")

    descend(unit_brick(dimension))
    return out
