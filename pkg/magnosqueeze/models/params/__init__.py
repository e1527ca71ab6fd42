"""Parameter models."""

from .linearized import LinearizedModel
from .system import SystemParams


__all__ = [
    "LinearizedModel",
    "SystemParams",
]
