import math
import re

import numpy as np

from .exceptions import DomainError

_GRID = re.compile(r"^\s*([^:]+):([^:]+):(\d+)\s*$")
_RANGE = re.compile(r"^\s*(-?\d+):(-?\d+)\s*$")


def parse_grid(text: str) -> list[float]:
    """``start:stop:count`` with both endpoints included."""
    match = _GRID.match(text)
    if not match:
        raise ValueError(f"grid {text!r} is not of the form start:stop:count")
    start, stop, count = float(match.group(1)), float(match.group(2)), int(match.group(3))
    if count < 1:
        raise ValueError(f"grid {text!r} needs at least one point")
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise ValueError(f"grid {text!r} has a non-finite endpoint")
    return np.linspace(start, stop, count).tolist()


def parse_int_range(text: str) -> tuple[int, int]:
    """``MIN:MAX`` lattice range."""
    match = _RANGE.match(text)
    if not match:
        raise ValueError(f"range {text!r} is not of the form MIN:MAX")
    return int(match.group(1)), int(match.group(2))


def require_positive(name: str, value: float) -> float:
    if not value > 0:
        raise DomainError(f"{name} must be positive, got {value}")
    return value


def require_open_interval(name: str, value: float, lo: float, hi: float) -> float:
    if not lo < value < hi:
        raise DomainError(f"{name} must lie in ({lo}, {hi}), got {value}")
    return value
