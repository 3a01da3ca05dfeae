"""Shared test helpers.

The helpers here deliberately avoid the library's parsing and evaluation
code paths: bricks are built straight from raw constructors and images are
recomputed from first principles with Fractions, so tests that use them
check the library against an independent route.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from nvbaker import Brick, Cell, Element

import _acceptance_log


def brick(text: str) -> Brick:
    """Build a brick from 'k/2^e,k/2^e' text without the formats module."""
    cells = []
    for part in text.split(","):
        numerator, exponent = part.split("/2^")
        cells.append(Cell(int(exponent), int(numerator)))
    return Brick(tuple(cells))


def interval(cell: Cell) -> tuple[Fraction, Fraction]:
    return (
        Fraction(cell.numerator, 1 << cell.exponent),
        Fraction(cell.numerator + 1, 1 << cell.exponent),
    )


def affine_image(
    point: tuple[Fraction, ...], domain: Brick, range_: Brick
) -> tuple[Fraction, ...]:
    """Image of a point under the canonical map, recomputed from scratch."""
    out = []
    for x, dc, rc in zip(point, domain.cells, range_.cells):
        dlo, dhi = interval(dc)
        rlo, rhi = interval(rc)
        out.append(rlo + (x - dlo) * (rhi - rlo) / (dhi - dlo))
    return tuple(out)


def element_image(e: Element, point: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    """Image of a point under an element, recomputed from scratch."""
    for p in e.pairs:
        if all(
            lo <= x < hi
            for x, (lo, hi) in zip(point, (interval(c) for c in p.domain.cells))
        ):
            return affine_image(point, p.domain, p.range)
    raise AssertionError(f"no domain brick contains {point}")


def grid_points(dimension: int, resolution: int):
    """All points k/2^resolution componentwise, as Fraction tuples."""
    side = [Fraction(k, 1 << resolution) for k in range(1 << resolution)]
    return itertools.product(side, repeat=dimension)


def all_cells(max_exponent: int) -> list[Cell]:
    return [
        Cell(e, k) for e in range(max_exponent + 1) for k in range(1 << e)
    ]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_log.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_log.RESULTS:
            terminalreporter.write_line(line)
