"""From-scratch CNN engine: Inception-style networks, SGD training, image pipeline, top-k eval."""

from foodnet.errors import (
    AllocationError,
    CheckpointError,
    DataError,
    FoodnetError,
    NumericsError,
    ParameterError,
    ShapeError,
    StateError,
)
from foodnet.tensor import Rng, Shape, tensor_create, tensor_offset

__version__ = "0.1.0"

__all__ = [
    "AllocationError",
    "CheckpointError",
    "DataError",
    "FoodnetError",
    "NumericsError",
    "ParameterError",
    "Rng",
    "Shape",
    "ShapeError",
    "StateError",
    "tensor_create",
    "tensor_offset",
]
