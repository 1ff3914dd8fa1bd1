"""Bijections between a single index ``y`` and virtual-subsystem index tuples.

For a factorization ``N = X1 * X2 * ... * Xn`` the map is mixed-radix with the
first axis varying fastest::

    y = x1 + (x2 - 1) X1 + (x3 - 1) X1 X2 + ...

All indices are 1-based at this module's boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError


@dataclass(frozen=True)
class FactorShape:
    """Ordered factors ``(X1, ..., Xn)`` of a system dimension."""

    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(x) for x in self.factors)
        if not factors:
            raise DomainError("shape needs at least one factor")
        for i, x in enumerate(factors, start=1):
            if x < 1:
                raise DomainError(f"factor {i} must be >= 1, got {x}")
        object.__setattr__(self, "factors", factors)

    @property
    def dimension(self) -> int:
        return math.prod(self.factors)

    @property
    def n(self) -> int:
        return len(self.factors)

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __str__(self):
        return ",".join(str(x) for x in self.factors)

    @classmethod
    def parse(cls, text: str) -> "FactorShape":
        """Parse ``"2,3,2"``."""
        try:
            factors = tuple(int(tok) for tok in text.split(","))
        except ValueError:
            raise DomainError(f"cannot parse shape {text!r}") from None
        return cls(factors)


def as_shape(shape) -> FactorShape:
    if isinstance(shape, FactorShape):
        return shape
    if isinstance(shape, str):
        return FactorShape.parse(shape)
    if isinstance(shape, int):
        return FactorShape((shape,))
    return FactorShape(tuple(shape))


@dataclass(frozen=True)
class MarginalSpec:
    """A shape together with the (1-based, increasing) axes to keep."""

    shape: FactorShape
    keep_axes: tuple[int, ...]

    def __post_init__(self):
        shape = as_shape(self.shape)
        keep = tuple(int(a) for a in self.keep_axes)
        if not keep:
            raise DomainError("keep_axes must be nonempty")
        if any(b <= a for a, b in zip(keep, keep[1:])):
            raise DomainError(f"keep_axes must be strictly increasing, got {keep}")
        for a in keep:
            if not 1 <= a <= shape.n:
                raise DomainError(f"axis {a} outside 1..{shape.n}")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "keep_axes", keep)

    @property
    def drop_axes(self) -> tuple[int, ...]:
        return tuple(a for a in range(1, self.shape.n + 1) if a not in self.keep_axes)

    @property
    def kept_shape(self) -> FactorShape:
        return FactorShape(tuple(self.shape.factors[a - 1] for a in self.keep_axes))


def compose(coords: Sequence[int], shape) -> int:
    """Map 1-based coordinates ``(x1, ..., xn)`` to the single index ``y``."""
    shape = as_shape(shape)
    coords = tuple(coords)
    if len(coords) != shape.n:
        raise DomainError(f"expected {shape.n} coordinates, got {len(coords)}")
    y = 0
    stride = 1
    for axis, (x, size) in enumerate(zip(coords, shape.factors), start=1):
        if not 1 <= x <= size:
            raise DomainError(f"coordinate x{axis}={x} outside 1..{size}")
        y += (x - 1) * stride
        stride *= size
    return y + 1


def decompose(y: int, shape) -> tuple[int, ...]:
    """Inverse of :func:`compose`.

    Residues are taken 1-based, ``x1 = (y - 1) mod X1 + 1``, so that for
    ``X1 = 2`` one gets ``x1(2) = 2`` rather than 0.
    """
    shape = as_shape(shape)
    if not 1 <= y <= shape.dimension:
        raise DomainError(f"index y={y} outside 1..{shape.dimension}")
    rest = y - 1
    coords = []
    for size in shape.factors:
        rest, r = divmod(rest, size)
        coords.append(r + 1)
    return tuple(coords)


def enumerate_cells(shape) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield ``(y, (x1, ..., xn))`` for ``y = 1..N`` in ascending order."""
    shape = as_shape(shape)
    for y in range(1, shape.dimension + 1):
        yield y, decompose(y, shape)


def check_dimension(dim: int, shape) -> FactorShape:
    shape = as_shape(shape)
    if shape.dimension != dim:
        raise DomainError(
            f"shape {shape} has product {shape.dimension}, input dimension is {dim}"
        )
    return shape
