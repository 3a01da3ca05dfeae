"""Elements of the n-dimensional dyadic rearrangement groups.

An element is a bijection of [0,1)^n given by two partitions into dyadic
bricks and a pairing between them; each pair is glued by the canonical
affine map (axis-aligned, orientation-preserving, power-of-2 scale on each
axis, no axis permutation). Composition refines partitions as needed, so
elements form a group under `then` / `inverse`.

Pair transport never leaves integer arithmetic: a subcell [k/2^e, ...) of a
source cell [k0/2^e0, ...) lands in the destination cell [k1/2^e1, ...) at

    e' = e - e0 + e1
    k' = k1 * 2^(e - e0) + (k - k0 * 2^(e - e0))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, ElementError
from .geometry import (
    Brick,
    Cell,
    Partition,
    brick_intersect,
    partition_validate,
    unit_brick,
)


@dataclass(frozen=True)
class Pair:
    """One brick of the domain partition and its image brick."""

    domain: Brick
    range: Brick

    def __post_init__(self) -> None:
        if self.domain.dimension != self.range.dimension:
            raise DimensionMismatchError(
                f"pair mixes dimensions {self.domain.dimension} and {self.range.dimension}"
            )

    @property
    def is_identity(self) -> bool:
        return self.domain == self.range

    def __str__(self) -> str:
        return f"{self.domain} -> {self.range}"


def map_cell_through(sub: Cell, src: Cell, dst: Cell) -> Cell:
    """Image of a subcell of src under the affine map sending src onto dst."""
    shift = sub.exponent - src.exponent
    if shift < 0 or (sub.numerator >> shift) != src.numerator:
        raise ElementError(f"cell {sub} is not inside {src}")
    offset = sub.numerator - (src.numerator << shift)
    return Cell(dst.exponent + shift, (dst.numerator << shift) + offset)


def map_through(sub: Brick, src: Brick, dst: Brick) -> Brick:
    """Image of a sub-brick of src under the affine map sending src onto dst."""
    if not src.contains_brick(sub):
        raise ElementError(f"brick {sub} is not inside {src}")
    return Brick(
        tuple(
            map_cell_through(c, cs, cd)
            for c, cs, cd in zip(sub.cells, src.cells, dst.cells)
        )
    )


@dataclass(frozen=True)
class Element:
    """A dyadic rearrangement, stored as pairs sorted by domain brick.

    The constructor normalizes order but does not validate; use `from_pairs`
    for checked construction from untrusted data. Operations inside the
    library construct elements whose partitions are correct by construction.
    """

    dimension: int
    pairs: tuple[Pair, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "pairs",
            tuple(sorted(self.pairs, key=lambda p: p.domain.sort_key())),
        )

    @staticmethod
    def from_pairs(pairs: Iterable[Pair]) -> "Element":
        items = tuple(pairs)
        if not items:
            raise ElementError("an element needs at least one pair")
        dim = items[0].domain.dimension
        for p in items:
            if p.domain.dimension != dim:
                raise DimensionMismatchError("pairs of mixed dimensions")
        for side, bricks in (
            ("domain", [p.domain for p in items]),
            ("range", [p.range for p in items]),
        ):
            report = partition_validate(bricks)
            if not report:
                detail = "; ".join(report.problems)
                raise ElementError(f"{side} bricks do not partition the cube: {detail}")
        return Element(dim, items)

    @property
    def domain_partition(self) -> Partition:
        return Partition(tuple(p.domain for p in self.pairs))

    @property
    def range_partition(self) -> Partition:
        return Partition(tuple(p.range for p in self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)


def identity(dimension: int) -> Element:
    cube = unit_brick(dimension)
    return Element(dimension, (Pair(cube, cube),))


def then(f: Element, g: Element) -> Element:
    """The composite applying f first, then g."""
    if f.dimension != g.dimension:
        raise DimensionMismatchError(
            f"cannot compose elements of dimensions {f.dimension} and {g.dimension}"
        )
    pairs = []
    for pf in f.pairs:
        for pg in g.pairs:
            meet = brick_intersect(pf.range, pg.domain)
            if meet is None:
                continue
            dom = map_through(meet, pf.range, pf.domain)
            rng = map_through(meet, pg.domain, pg.range)
            pairs.append(Pair(dom, rng))
    return Element(f.dimension, tuple(pairs))


def inverse(f: Element) -> Element:
    return Element(f.dimension, tuple(Pair(p.range, p.domain) for p in f.pairs))


def apply_point(f: Element, point: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Image of a point of [0,1)^n under the element."""
    pt = tuple(Fraction(x) for x in point)
    if len(pt) != f.dimension:
        raise DimensionMismatchError(
            f"point has {len(pt)} coordinates, element has dimension {f.dimension}"
        )
    if not all(0 <= x < 1 for x in pt):
        raise ElementError(f"point {pt} is outside the unit cube")
    for p in f.pairs:
        if p.domain.contains_point(pt):
            return tuple(
                cr.lo + (x - cd.lo) * (cr.length / cd.length)
                for x, cd, cr in zip(pt, p.domain.cells, p.range.cells)
            )
    raise ElementError(f"no domain brick contains {pt}")


def _refined_images(f: Element, g: Element) -> Iterable[tuple[Brick, Brick, Brick]]:
    """Common domain refinement with both images: (piece, f-image, g-image)."""
    for pf in f.pairs:
        for pg in g.pairs:
            meet = brick_intersect(pf.domain, pg.domain)
            if meet is None:
                continue
            yield (
                meet,
                map_through(meet, pf.domain, pf.range),
                map_through(meet, pg.domain, pg.range),
            )


def equals(f: Element, g: Element) -> bool:
    """Whether two elements are the same map (presentations may differ)."""
    if f.dimension != g.dimension:
        return False
    return all(fi == gi for _, fi, gi in _refined_images(f, g))


def equals_witness(f: Element, g: Element) -> tuple[Fraction, ...] | None:
    """None when equal, else a point where the two maps disagree.

    On a common refinement piece both restrictions are canonical affine
    maps, so they differ exactly when their image bricks differ: at the
    piece's corner when the image corners differ, otherwise (equal corners,
    some axis scale differs) at the piece's midpoint.
    """
    if f.dimension != g.dimension:
        raise DimensionMismatchError(
            f"cannot compare elements of dimensions {f.dimension} and {g.dimension}"
        )
    for piece, fi, gi in _refined_images(f, g):
        if fi == gi:
            continue
        if any(cf.lo != cg.lo for cf, cg in zip(fi.cells, gi.cells)):
            return tuple(c.lo for c in piece.cells)
        return tuple(c.lo + c.length / 2 for c in piece.cells)
    return None


def support(f: Element) -> tuple[Brick, ...]:
    """Maximal bricks covering the moved set, in sorted order.

    Starts from the domain bricks of non-identity pairs and greedily merges
    sibling bricks until no merge applies. Identity pairs never overlap the
    moved set, so this is exact for elements in any presentation.
    """
    bricks = [p.domain for p in f.pairs if not p.is_identity]
    merged = True
    while merged:
        merged = False
        bricks.sort(key=Brick.sort_key)
        for i in range(len(bricks)):
            for j in range(i + 1, len(bricks)):
                pair = _sibling_axis(bricks[i], bricks[j])
                if pair is not None:
                    joined = bricks[i].double(pair)
                    del bricks[j], bricks[i]
                    bricks.append(joined)
                    merged = True
                    break
            if merged:
                break
    return tuple(sorted(bricks, key=Brick.sort_key))


def _sibling_axis(a: Brick, b: Brick) -> int | None:
    """The axis along which a and b are sibling halves, if there is one."""
    if a.dimension != b.dimension:
        return None
    axis = None
    for i, (ca, cb) in enumerate(zip(a.cells, b.cells)):
        if ca == cb:
            continue
        if axis is not None:
            return None
        if ca.exponent != cb.exponent or ca.exponent == 0:
            return None
        if ca.numerator ^ cb.numerator != 1:
            return None
        axis = i
    return axis


def coarsen(f: Element) -> Element:
    """The canonical reduced presentation of the same map.

    Repeatedly merges two pairs whose domain bricks are siblings along some
    axis a, whose range bricks are siblings along the same axis, with lower
    half mapping to lower half. Only such merges preserve the map, so the
    result is independent of scan order; the scan is deterministic anyway.
    """
    pairs = list(f.pairs)
    merged = True
    while merged:
        merged = False
        pairs.sort(key=lambda p: p.domain.sort_key())
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                a, b = pairs[i], pairs[j]
                axis = _sibling_axis(a.domain, b.domain)
                if axis is None:
                    continue
                if _sibling_axis(a.range, b.range) != axis:
                    continue
                # Orientation: lower domain half must carry lower range half.
                if a.domain.cells[axis].is_lower_child != a.range.cells[axis].is_lower_child:
                    continue
                if b.domain.cells[axis].is_lower_child != b.range.cells[axis].is_lower_child:
                    continue
                joined = Pair(a.domain.double(axis), a.range.double(axis))
                del pairs[j], pairs[i]
                pairs.append(joined)
                merged = True
                break
            if merged:
                break
    return Element(f.dimension, tuple(pairs))


@dataclass(frozen=True)
class Word:
    """A finite sequence of elements, applied first factor first."""

    dimension: int
    factors: tuple[Element, ...]

    def __post_init__(self) -> None:
        for e in self.factors:
            if e.dimension != self.dimension:
                raise DimensionMismatchError("word factor of wrong dimension")

    def __len__(self) -> int:
        return len(self.factors)

    def product(self) -> Element:
        """Compose all factors; the empty word is the identity.

        Fold shape does not change the resulting presentation, and balanced
        folding keeps intermediate pair counts near the final size instead of
        accumulating refinement piece by piece.
        """
        if not self.factors:
            return identity(self.dimension)
        return _fold(self.factors, 0, len(self.factors))


def _fold(factors: Sequence[Element], lo: int, hi: int) -> Element:
    if hi - lo == 1:
        return factors[lo]
    mid = (lo + hi) // 2
    return then(_fold(factors, lo, mid), _fold(factors, mid, hi))
