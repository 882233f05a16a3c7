"""Constructors for the named states.

Coherent and squeezed states on the circle are realized as lattice
Gaussians c_n ~ exp(-s (n - l)^2 / 2 - i n alpha). With s = 1 the shift
identity sum_n exp(-(n+1-l)^2) = sum_n exp(-(n-l)^2) makes |<U^2>| = e^{-1}
for every (l, alpha); in general |<U^2>| = e^{-s}.
"""
import logging
import math
from typing import Optional

import numpy as np

from .circle_state import normalize
from .config import settings
from .exceptions import BadRange, DomainError, TruncationError
from .models import TWO_PI, FourierState, LineBoxPacket, LineSegment, PiecewisePacket, Segment
from .schemas import CoherentParams
from .validator import require_open_interval, require_positive

logger = logging.getLogger(__name__)


# ----------------------------------- Line packets -----------------------------------
def box_packet(length: float) -> LineBoxPacket:
    require_positive("L", length)
    return LineBoxPacket((LineSegment(-length / 2, length / 2, 1.0 / math.sqrt(length)),))


def split_box_packet(length: float) -> LineBoxPacket:
    """Two outer quarters of the box, empty in the middle half."""
    require_positive("L", length)
    amplitude = math.sqrt(2.0 / length)
    return LineBoxPacket((
        LineSegment(-length / 2, -length / 4, amplitude),
        LineSegment(length / 4, length / 2, amplitude),
    ))


# ----------------------------------- Circle packets -----------------------------------
def char_packet(epsilon: float) -> PiecewisePacket:
    """sqrt(2pi/eps) times the indicator of [0, eps]."""
    require_open_interval("epsilon", epsilon, 0.0, TWO_PI)
    return PiecewisePacket((Segment(0.0, epsilon, math.sqrt(TWO_PI / epsilon)),))


def uniform_packet() -> PiecewisePacket:
    return PiecewisePacket((Segment(0.0, TWO_PI, 1.0),))


def two_arc_packet(epsilon: float, separation: float = math.pi) -> PiecewisePacket:
    """Two equal arcs of width eps starting at 0 and at ``separation``."""
    require_open_interval("separation", separation, 0.0, TWO_PI)
    if not 0.0 < epsilon <= min(separation, TWO_PI - separation):
        raise DomainError(f"arcs of width {epsilon} overlap at separation {separation}")
    amplitude = math.sqrt(math.pi / epsilon)
    return PiecewisePacket((
        Segment(0.0, epsilon, amplitude),
        Segment(separation, separation + epsilon, amplitude),
    ))


# ----------------------------------- Lattice states -----------------------------------
def _lattice_range(n_min: Optional[int], n_max: Optional[int]) -> tuple[int, int]:
    n_min = settings.N_MIN if n_min is None else n_min
    n_max = settings.N_MAX if n_max is None else n_max
    if n_min > n_max:
        raise BadRange(f"n_min={n_min} exceeds n_max={n_max}")
    return n_min, n_max


def _gaussian_profile(params: CoherentParams, s: float, n_min: int, n_max: int) -> np.ndarray:
    ns = np.arange(n_min, n_max + 1)
    return np.exp(-s * (ns - params.l) ** 2 / 2.0) * np.exp(-1j * ns * params.alpha)


def _check_centre(params: CoherentParams, n_min: int, n_max: int) -> None:
    if not n_min <= params.l <= n_max:
        raise TruncationError(f"centre l={params.l} lies outside the lattice [{n_min}, {n_max}]")


def _check_tail(state: FourierState, label: str) -> FourierState:
    if state.tail_mass > settings.TAIL_TOL:
        raise TruncationError(
            f"{label} leaves {state.tail_mass:.3e} on the lattice edges of "
            f"[{state.n_min}, {state.n_max}]; widen the range"
        )
    return state


def _lattice_gaussian(params: CoherentParams, s: float, n_min: Optional[int], n_max: Optional[int], label: str) -> FourierState:
    n_min, n_max = _lattice_range(n_min, n_max)
    _check_centre(params, n_min, n_max)
    state = normalize(FourierState(n_min, n_max, _gaussian_profile(params, s, n_min, n_max)))
    return _check_tail(state, label)


def squeezed_state(params: CoherentParams, n_min: Optional[int] = None, n_max: Optional[int] = None) -> FourierState:
    if not params.s > 0:
        raise DomainError(f"squeezing parameter must be positive, got {params.s}")
    return _lattice_gaussian(params, params.s, n_min, n_max, f"squeezed state (l={params.l}, s={params.s})")


def coherent_state(params: CoherentParams, n_min: Optional[int] = None, n_max: Optional[int] = None) -> FourierState:
    if params.s != 1.0:
        logger.debug("coherent_state ignores s=%s", params.s)
    return _lattice_gaussian(params, 1.0, n_min, n_max, f"coherent state (l={params.l}, alpha={params.alpha})")


def cat_state(
    params: CoherentParams,
    phase: float = 0.0,
    n_min: Optional[int] = None,
    n_max: Optional[int] = None,
) -> FourierState:
    """coherent(l, alpha) + e^{i phase} coherent(l, alpha + pi), normalized."""
    n_min, n_max = _lattice_range(n_min, n_max)
    _check_centre(params, n_min, n_max)
    ns = np.arange(n_min, n_max + 1)
    # exp(-in(alpha + pi)) = (-1)^n exp(-in alpha); the sign is applied exactly
    parity = np.where(ns % 2 == 0, 1.0, -1.0)
    profile = _gaussian_profile(params, params.s, n_min, n_max) * (1.0 + np.exp(1j * phase) * parity)
    state = normalize(FourierState(n_min, n_max, profile))
    return _check_tail(state, f"cat state (l={params.l}, phase={phase})")


def number_state(n: int, n_min: Optional[int] = None, n_max: Optional[int] = None) -> FourierState:
    n_min, n_max = _lattice_range(n_min, n_max)
    if not n_min <= n <= n_max:
        raise BadRange(f"n={n} lies outside [{n_min}, {n_max}]")
    coeffs = np.zeros(n_max - n_min + 1, dtype=np.complex128)
    coeffs[n - n_min] = 1.0
    return FourierState(n_min, n_max, coeffs)


def random_state(rng: np.random.Generator, n_min: Optional[int] = None, n_max: Optional[int] = None) -> FourierState:
    """Gaussian real and imaginary parts, normalized: uniform on the unit sphere."""
    n_min, n_max = _lattice_range(n_min, n_max)
    size = n_max - n_min + 1
    coeffs = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return normalize(FourierState(n_min, n_max, coeffs))
