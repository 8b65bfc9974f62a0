"""Dense rank-4 tensors in row-major NCHW layout plus the seeded random source.

Tensors are plain ``numpy.ndarray`` values of shape ``(n, c, h, w)``.
Weights and activations are float32; reductions inside kernels accumulate
in float64. Rank-2 fully-connected weights are stored as ``(K, D, 1, 1)``.

Rng is a thin wrapper over numpy's PCG64 bit generator (O'Neill's
permuted congruential generator, 128-bit state). The algorithm name is
frozen here so determinism tests stay portable: equal seeds yield equal
streams.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from foodnet.errors import AllocationError, ShapeError

DTYPE = np.float32

RNG_ALGORITHM = "pcg64"


@dataclass(frozen=True)
class Shape:
    """Batch / channel / height / width extents, all strictly positive."""

    n: int
    c: int
    h: int
    w: int

    def __post_init__(self):
        for name in ("n", "c", "h", "w"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 1:
                raise ShapeError(f"dimension {name}={v!r} must be a positive integer")

    @property
    def element_count(self) -> int:
        return self.n * self.c * self.h * self.w

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.c, self.h, self.w)


def tensor_create(shape: Shape, fill: float = 0.0, dtype=DTYPE) -> np.ndarray:
    """Allocate an NCHW tensor with every element equal to ``fill``."""
    if shape.element_count > np.iinfo(np.intp).max:
        raise AllocationError(f"{shape} overflows the platform index range")
    try:
        return np.full(shape.as_tuple(), fill, dtype=dtype)
    except (MemoryError, OverflowError) as exc:
        raise AllocationError(str(exc)) from exc


def tensor_offset(shape: Shape, n: int, c: int, h: int, w: int) -> int:
    """Flat row-major index of element (n, c, h, w): ((n*C + c)*H + h)*W + w."""
    if not (0 <= n < shape.n and 0 <= c < shape.c and 0 <= h < shape.h and 0 <= w < shape.w):
        raise ShapeError(f"index ({n},{c},{h},{w}) out of range for {shape}")
    return ((n * shape.c + c) * shape.h + h) * shape.w + w


def tensor_coords(shape: Shape, offset: int) -> tuple[int, int, int, int]:
    """Inverse of :func:`tensor_offset`."""
    if not (0 <= offset < shape.element_count):
        raise ShapeError(f"offset {offset} out of range for {shape}")
    w = offset % shape.w
    rest = offset // shape.w
    h = rest % shape.h
    rest //= shape.h
    c = rest % shape.c
    n = rest // shape.c
    return (n, c, h, w)


class Rng:
    """Deterministic random source: PCG64 seeded with a 64-bit integer.

    Single consumer by contract; parallel code must derive independent
    seeds (e.g. via :meth:`spawn`) instead of sharing one stream.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def normal(self, mean: float, stddev: float, count: int) -> np.ndarray:
        """Draw ``count`` Gaussian samples as float64."""
        if stddev < 0:
            raise ValueError("stddev must be non-negative")
        return self._gen.normal(loc=mean, scale=stddev, size=count)

    def uniform(self, count: int) -> np.ndarray:
        """Draw ``count`` samples uniform on [0, 1) as float64."""
        return self._gen.random(count)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)

    def integers(self, low: int, high: int, count: int) -> np.ndarray:
        return self._gen.integers(low, high, size=count)

    def spawn(self, key: int) -> "Rng":
        """Derive an independent stream for sub-task ``key``."""
        return Rng((self.seed * 0x9E3779B97F4A7C15 + key + 1) & 0xFFFFFFFFFFFFFFFF)


def rng_normal(rng: Rng, mean: float, stddev: float, count: int) -> np.ndarray:
    return rng.normal(mean, stddev, count)
