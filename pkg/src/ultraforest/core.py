"""Finite ultrametric spaces with exact rational distances.

A space is a tuple of named points together with a symmetric matrix of
nonnegative rationals satisfying the strong triangle inequality

    d(x, y) <= max(d(x, z), d(z, y))   for all x, y, z.

All arithmetic is exact; floating point never enters the core.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import (
    DiagonalNonzero,
    EmptySubset,
    FormatMismatch,
    NegativeDistance,
    NotSymmetric,
    OffDiagonalZero,
    StrongTriangleViolation,
    UnknownPoint,
)

Rational = Fraction

ZERO = Fraction(0)


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome carrying an optional witness.

    Truthiness follows ``ok`` so verdicts drop into ``if`` tests directly;
    the witness explains a False (or occasionally a True) outcome.
    """

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class PointSpectrum:
    center: str
    values: tuple[Fraction, ...]


def _coerce_entry(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise FormatMismatch(
        f"matrix entries must be exact rationals or integers, got {type(value).__name__}"
    )


class Space:
    """An immutable finite ultrametric space.

    ``points`` fixes an order used by the matrix; equality is metric
    equality (same point set, same pairwise distances) regardless of order.
    Construct untrusted matrices through :func:`validate_space`.
    """

    __slots__ = ("points", "dist", "_index", "_diam")

    def __init__(self, points: Sequence[str], dist: Sequence[Sequence[Fraction]]):
        self.points: tuple[str, ...] = tuple(points)
        self.dist: tuple[tuple[Fraction, ...], ...] = tuple(tuple(row) for row in dist)
        self._index = {p: i for i, p in enumerate(self.points)}
        self._diam = None

    def __len__(self) -> int:
        return len(self.points)

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownPoint(x) from None

    def distance(self, x: str, y: str) -> Fraction:
        return self.dist[self.index(x)][self.index(y)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Space):
            return NotImplemented
        if set(self.points) != set(other.points):
            return False
        om = other._index
        for i, p in enumerate(self.points):
            orow = other.dist[om[p]]
            row = self.dist[i]
            for j, q in enumerate(self.points):
                if row[j] != orow[om[q]]:
                    return False
        return True

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Space({len(self.points)} points, diameter {diameter(self)})"


def validate_space(matrix: Sequence[Sequence], points: Sequence[str]) -> Space:
    """Check a distance matrix and return the Space it defines.

    Raises NotSymmetric / DiagonalNonzero / OffDiagonalZero /
    NegativeDistance / StrongTriangleViolation with a witness, in that
    order of scanning; FormatMismatch for shape or entry-type problems.
    """
    pts = [str(p) for p in points]
    n = len(pts)
    if n == 0:
        raise FormatMismatch("a space needs at least one point")
    if len(set(pts)) != n:
        raise FormatMismatch("point ids must be pairwise distinct")
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise FormatMismatch(f"matrix must be {n}x{n} to match the point count")

    d = [[_coerce_entry(matrix[i][j]) for j in range(n)] for i in range(n)]

    for i in range(n):
        if d[i][i] != 0:
            raise DiagonalNonzero(pts[i])
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] != d[j][i]:
                raise NotSymmetric(pts[i], pts[j])
            if d[i][j] < 0:
                raise NegativeDistance(pts[i], pts[j])
            if d[i][j] == 0:
                raise OffDiagonalZero(pts[i], pts[j])
    for i in range(n):
        for j in range(i + 1, n):
            dij = d[i][j]
            for k in range(n):
                if k == i or k == j:
                    continue
                if dij > max(d[i][k], d[k][j]):
                    raise StrongTriangleViolation(pts[i], pts[j], pts[k])
    return Space(pts, d)


def spectrum(space: Space) -> tuple[Fraction, ...]:
    """All distinct distance values, sorted ascending; always starts with 0."""
    values = {ZERO}
    for row in space.dist:
        values.update(row)
    return tuple(sorted(values))


def point_spectrum(space: Space, x: str) -> PointSpectrum:
    """Distances from ``x`` to every point (itself included), deduplicated."""
    row = space.dist[space.index(x)]
    return PointSpectrum(center=x, values=tuple(sorted(set(row))))


def diameter(space: Space) -> Fraction:
    if space._diam is None:
        space._diam = max((v for row in space.dist for v in row), default=ZERO)
    return space._diam


def restrict(space: Space, subset: Iterable[str]) -> Space:
    """The subspace induced on ``subset``, keeping the original point order."""
    wanted = set(subset)
    if not wanted:
        raise EmptySubset()
    for p in wanted:
        if p not in space._index:
            raise UnknownPoint(p)
    keep = [i for i, p in enumerate(space.points) if p in wanted]
    pts = [space.points[i] for i in keep]
    d = [[space.dist[i][j] for j in keep] for i in keep]
    return Space(pts, d)


def to_plain(value):
    """Recursively convert rationals/sets/tuples into JSON-friendly data."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (frozenset, set)):
        return sorted(to_plain(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(to_plain(k)): to_plain(v) for k, v in value.items()}
    return value
