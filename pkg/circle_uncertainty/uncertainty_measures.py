"""Uncertainty functionals for a particle on a circle and on a line.

The windowed variance depends on where the 2pi-wide integration window
starts; the logarithmic measure -1/4 ln|<U^2>|^2 does not.
"""
import logging
import math
from functools import singledispatch
from typing import Optional

import numpy as np

from .circle_state import CircleState, expectation_U_power, j_moments, windowed_moments
from .config import settings
from .exceptions import ConsistencyError, DomainError
from .models import TWO_PI, FourierState, LineBoxPacket, PiecewisePacket, window_pieces
from .schemas import UncertaintyReport
from .validator import require_open_interval

logger = logging.getLogger(__name__)


# ----------------------------------- Line -----------------------------------
def line_position_variance(packet: LineBoxPacket) -> float:
    mean = sum(seg.amplitude ** 2 * (seg.x_end ** 2 - seg.x_start ** 2) / 2.0 for seg in packet)
    return sum(
        seg.amplitude ** 2 * ((seg.x_end - mean) ** 3 - (seg.x_start - mean) ** 3) / 3.0
        for seg in packet
    )


def line_heisenberg_sum(sigma2: float) -> float:
    """Delta^2 x + Delta^2 p for a minimum-uncertainty Gaussian of position variance sigma2 (hbar = 1)."""
    if not sigma2 > 0:
        raise DomainError(f"sigma^2 must be positive, got {sigma2}")
    return sigma2 + 1.0 / (4.0 * sigma2)


# ----------------------------------- Windowed variance -----------------------------------
@singledispatch
def circular_variance(state, lam: float = 0.0) -> float:
    raise TypeError(f"no windowed variance for {type(state).__name__}")


@circular_variance.register
def _(state: PiecewisePacket, lam: float = 0.0) -> float:
    mean, _ = windowed_moments(state, lam)
    # central form keeps the cancellation small for windows far from the origin
    return sum(
        abs(amplitude) ** 2 * ((hi - mean) ** 3 - (lo - mean) ** 3) / (3.0 * TWO_PI)
        for lo, hi, amplitude in window_pieces(state, lam)
    )


@circular_variance.register
def _(state: FourierState, lam: float = 0.0) -> float:
    first, second = windowed_moments(state, lam)
    return max(0.0, second - first * first)


def _window_identity_rhs(packet: PiecewisePacket, lam: float) -> float:
    """2 * int_0^lam (phi + pi - <phi>_0)|f|^2 dphi - (int_0^lam |f|^2 dphi)^2, with lam in [0, 2pi)."""
    mean0, _ = windowed_moments(packet, 0.0)
    moved = 0.0
    weighted = 0.0
    for lo, hi, amplitude in window_pieces(packet, 0.0):
        hi = min(hi, lam)
        if hi <= lo:
            continue
        density = abs(amplitude) ** 2
        moved += density * (hi - lo)
        weighted += density * ((hi - mean0 + math.pi) ** 2 - (lo - mean0 + math.pi) ** 2) / 2.0
    return 2.0 * weighted - moved * moved


def circular_variance_difference(packet: PiecewisePacket, lam: float, tol: Optional[float] = None) -> float:
    """Delta^2_lam - Delta^2_0, checked against the window-integral identity.

    The variance depends only on lam modulo 2pi, so lam is reduced first.
    """
    tol = settings.CONSISTENCY_TOL if tol is None else tol
    lam = float(np.mod(lam, TWO_PI))
    direct = circular_variance(packet, lam) - circular_variance(packet, 0.0)
    identity = _window_identity_rhs(packet, lam)
    if abs(direct - identity) > tol:
        raise ConsistencyError(
            "window-shift identity",
            f"direct difference {direct!r} vs identity {identity!r} at lambda={lam!r}",
        )
    return direct


def char_packet_difference_closed_form(epsilon: float, lam: float) -> float:
    require_open_interval("epsilon", epsilon, 0.0, TWO_PI)
    if not 0.0 <= lam < TWO_PI:
        raise DomainError(f"lambda must lie in [0, 2pi), got {lam}")
    if epsilon <= lam:
        return 0.0
    ratio = TWO_PI / epsilon
    return ratio * lam * ((1.0 - ratio) * lam + 2.0 * (math.pi - epsilon / 2.0))


# ----------------------------------- Origin-invariant measure -----------------------------------
def kr_from_magnitude(magnitude: float, zero_tol: Optional[float] = None) -> float:
    zero_tol = settings.U2_ZERO_TOL if zero_tol is None else zero_tol
    if magnitude < zero_tol:
        return math.inf
    return max(0.0, -0.5 * math.log(magnitude))


def kr_angle_uncertainty(state: CircleState, lam: float = 0.0, zero_tol: Optional[float] = None) -> float:
    """-1/4 ln|<U^2>_lam|^2, +inf when <U^2> vanishes."""
    return kr_from_magnitude(abs(expectation_U_power(state, 2, lam)), zero_tol)


@singledispatch
def angular_momentum_variance(state) -> float:
    raise TypeError(f"no angular momentum variance for {type(state).__name__}")


@angular_momentum_variance.register
def _(state: FourierState) -> float:
    mean, second = j_moments(state)
    return max(0.0, second - mean * mean)


@angular_momentum_variance.register
def _(state: PiecewisePacket) -> float:
    # any jump in f gives |c_n|^2 ~ 1/n^2, so <J^2> diverges unless f is constant
    return 0.0 if _is_constant(state) else math.inf


def _is_constant(packet: PiecewisePacket) -> bool:
    pieces = sorted(packet.base_pieces())
    if abs(sum(hi - lo for lo, hi, _ in pieces) - TWO_PI) > 1e-12:
        return False
    first = pieces[0][2]
    return all(abs(amplitude - first) <= 1e-12 for _, _, amplitude in pieces)


def uncertainty_sum(state: FourierState) -> float:
    return kr_angle_uncertainty(state) + angular_momentum_variance(state)


def batch_uncertainty_sums(coeffs: np.ndarray, n_min: int, zero_tol: Optional[float] = None) -> np.ndarray:
    """Uncertainty sums for each normalized row of ``coeffs``."""
    zero_tol = settings.U2_ZERO_TOL if zero_tol is None else zero_tol
    coeffs = np.atleast_2d(coeffs)
    ns = np.arange(n_min, n_min + coeffs.shape[1], dtype=float)
    weights = np.abs(coeffs) ** 2
    mean = weights @ ns
    j_var = np.maximum(weights @ (ns * ns) - mean * mean, 0.0)
    u2 = np.abs(np.sum(np.conj(coeffs[:, 2:]) * coeffs[:, :-2], axis=1))
    kr = np.where(u2 < zero_tol, np.inf, np.maximum(-0.5 * np.log(np.maximum(u2, zero_tol)), 0.0))
    return kr + j_var


def build_report(state: CircleState, lam: float = 0.0) -> UncertaintyReport:
    u2 = abs(expectation_U_power(state, 2, lam))
    kr = kr_from_magnitude(u2)
    j_var = angular_momentum_variance(state)
    return UncertaintyReport(
        lambda_=lam,
        circ_variance=circular_variance(state, lam),
        kr_angle=kr,
        j_variance=j_var,
        sum_kr=kr + j_var,
        u2_magnitude=min(u2, 1.0),
    )

