"""Dual representation of states on the circle.

A state is either a truncated Fourier expansion (angular-momentum basis) or
a piecewise-constant packet in position space. Everything here is pure and
works on immutable values.
"""
import logging
import math
import warnings
from functools import singledispatch
from typing import Optional, Union

import numpy as np

from .config import settings
from .exceptions import BadRange, DomainError, TruncationWarning, ZeroNorm
from .models import TWO_PI, FourierState, LineBoxPacket, LineSegment, PiecewisePacket, Segment, window_pieces
from .schemas import StateDump

logger = logging.getLogger(__name__)

CircleState = Union[FourierState, PiecewisePacket]

_ZERO_NORM = 1e-300


def fourier_state(coeffs, n_min: int) -> FourierState:
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    return FourierState(n_min, n_min + coeffs.size - 1, coeffs)


# ----------------------------------- Normalization -----------------------------------
@singledispatch
def normalize(state):
    raise TypeError(f"cannot normalize {type(state).__name__}")


@normalize.register
def _(state: FourierState) -> FourierState:
    norm = math.sqrt(state.norm_squared)
    if norm < _ZERO_NORM:
        raise ZeroNorm("Fourier state has zero norm")
    return state.with_coeffs(state.coeffs / norm)


@normalize.register
def _(state: PiecewisePacket) -> PiecewisePacket:
    norm = math.sqrt(state.norm_squared)
    if norm < _ZERO_NORM:
        raise ZeroNorm("packet has zero norm")
    return PiecewisePacket(tuple(Segment(seg.start, seg.end, seg.amplitude / norm) for seg in state))


@normalize.register
def _(state: LineBoxPacket) -> LineBoxPacket:
    norm = math.sqrt(state.norm_squared)
    if norm < _ZERO_NORM:
        raise ZeroNorm("line packet has zero norm")
    return LineBoxPacket(tuple(LineSegment(seg.x_start, seg.x_end, seg.amplitude / norm) for seg in state))


def is_normalized(state, tol: Optional[float] = None) -> bool:
    tol = settings.NORM_TOL if tol is None else tol
    return abs(state.norm_squared - 1.0) <= tol


# ----------------------------------- Change of representation -----------------------------------
def fourier_from_packet(packet: PiecewisePacket, n_min: int, n_max: int, tail_tol: Optional[float] = None) -> FourierState:
    """c_n = (1/2pi) * integral f(phi) e^{-in phi} dphi, exact per arc.

    The Parseval deficit left outside [n_min, n_max] is stored as
    ``removed_mass``; if it exceeds ``tail_tol`` the coefficients are
    renormalized and a TruncationWarning is issued. A lattice that keeps no
    more than ``tail_tol`` of the norm raises ZeroNorm.
    """
    if n_min > n_max:
        raise BadRange(f"n_min={n_min} exceeds n_max={n_max}")
    tail_tol = settings.TAIL_TOL if tail_tol is None else tail_tol
    ns = np.arange(n_min, n_max + 1)
    nonzero = ns != 0
    inv_in = np.zeros(ns.size, dtype=np.complex128)
    inv_in[nonzero] = 1.0 / (1j * ns[nonzero])

    coeffs = np.zeros(ns.size, dtype=np.complex128)
    for seg in packet:
        integral = np.where(
            nonzero,
            (np.exp(-1j * ns * seg.start) - np.exp(-1j * ns * seg.end)) * inv_in,
            seg.width,
        )
        coeffs += seg.amplitude * integral / TWO_PI

    kept = float(np.vdot(coeffs, coeffs).real)
    if kept <= max(tail_tol, _ZERO_NORM):
        raise ZeroNorm(
            f"Fourier image on [{n_min}, {n_max}] keeps only {kept:.3e} of the norm; widen the range"
        )
    removed = max(0.0, packet.norm_squared - kept)
    if removed > tail_tol:
        warnings.warn(
            f"Fourier image on [{n_min}, {n_max}] misses {removed:.3e} of the norm; renormalized",
            TruncationWarning,
            stacklevel=2,
        )
        logger.debug("fourier_from_packet: removed mass %.3e on [%d, %d]", removed, n_min, n_max)
        coeffs = coeffs / math.sqrt(kept)
    return FourierState(n_min, n_max, coeffs, removed_mass=removed)


# ----------------------------------- Inner products and moments -----------------------------------
def inner_product(a: FourierState, b: FourierState) -> complex:
    """sum_n conj(a_n) b_n over the overlap of the two lattices."""
    lo = max(a.n_min, b.n_min)
    hi = min(a.n_max, b.n_max)
    if lo > hi:
        return 0j
    return complex(np.vdot(a.coeffs[lo - a.n_min: hi - a.n_min + 1], b.coeffs[lo - b.n_min: hi - b.n_min + 1]))


@singledispatch
def expectation_U_power(state, k: int, lam: float = 0.0) -> complex:
    raise TypeError(f"no <U^k> for {type(state).__name__}")


@expectation_U_power.register
def _(state: FourierState, k: int, lam: float = 0.0) -> complex:
    # U^k shifts n -> n + k, so <U^k> = sum_n conj(c_{n+k}) c_n; lam plays no role
    if k <= 0:
        raise DomainError(f"power k must be a positive integer, got {k}")
    if k >= state.size:
        return 0j
    return complex(np.vdot(state.coeffs[k:], state.coeffs[:-k]))


@expectation_U_power.register
def _(state: PiecewisePacket, k: int, lam: float = 0.0) -> complex:
    if k <= 0:
        raise DomainError(f"power k must be a positive integer, got {k}")
    total = 0j
    for lo, hi, amplitude in window_pieces(state, lam):
        total += abs(amplitude) ** 2 * (np.exp(1j * k * hi) - np.exp(1j * k * lo)) / (1j * k)
    return complex(total / TWO_PI)


def j_moments(state: FourierState) -> tuple[float, float]:
    """(<J>, <J^2>) in the angular-momentum basis."""
    weights = np.abs(state.coeffs) ** 2
    ns = state.ns.astype(float)
    return float(np.dot(ns, weights)), float(np.dot(ns * ns, weights))


def phase_estimate(state: CircleState, zero_tol: Optional[float] = None) -> tuple[Optional[float], float]:
    """(arg<U> reduced to [0, 2pi), |<U>|); the angle is None when |<U>| is below ``zero_tol``."""
    zero_tol = settings.U2_ZERO_TOL if zero_tol is None else zero_tol
    u1 = expectation_U_power(state, 1)
    magnitude = abs(u1)
    if magnitude < zero_tol:
        return None, magnitude
    return float(np.mod(np.angle(u1), TWO_PI)), magnitude


# ----------------------------------- Windowed angle moments -----------------------------------
@singledispatch
def windowed_moments(state, lam: float = 0.0) -> tuple[float, float]:
    raise TypeError(f"no windowed moments for {type(state).__name__}")


@windowed_moments.register
def _(state: PiecewisePacket, lam: float = 0.0) -> tuple[float, float]:
    first = 0.0
    second = 0.0
    for lo, hi, amplitude in window_pieces(state, lam):
        density = abs(amplitude) ** 2 / TWO_PI
        first += density * (hi * hi - lo * lo) / 2.0
        second += density * (hi ** 3 - lo ** 3) / 3.0
    return first, second


@windowed_moments.register
def _(state: FourierState, lam: float = 0.0) -> tuple[float, float]:
    # |f|^2 = sum_{n,m} conj(c_m) c_n e^{i(n-m)phi}; each term integrates in closed form
    ns = state.ns.astype(float)
    d = ns[None, :] - ns[:, None]
    off = d != 0
    safe_d = np.where(off, d, 1.0)
    shift = np.exp(1j * safe_d * lam)
    top = lam + TWO_PI
    first_kernel = np.where(off, shift / (1j * safe_d), lam + math.pi)
    second_kernel = np.where(
        off,
        shift * ((2.0 * lam + TWO_PI) / (1j * safe_d) + 2.0 / safe_d ** 2),
        (top ** 3 - lam ** 3) / (3.0 * TWO_PI),
    )
    c = state.coeffs
    first = np.vdot(c, first_kernel @ c).real
    second = np.vdot(c, second_kernel @ c).real
    return float(first), float(second)


# ----------------------------------- Position space -----------------------------------
@singledispatch
def wavefunction(state, phis) -> np.ndarray:
    raise TypeError(f"cannot evaluate {type(state).__name__}")


@wavefunction.register
def _(state: FourierState, phis) -> np.ndarray:
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    return np.exp(1j * np.outer(phis, state.ns)) @ state.coeffs


@wavefunction.register
def _(state: PiecewisePacket, phis) -> np.ndarray:
    phis = np.mod(np.atleast_1d(np.asarray(phis, dtype=float)), TWO_PI)
    out = np.zeros(phis.shape, dtype=np.complex128)
    for lo, hi, amplitude in state.base_pieces():
        out[(phis >= lo) & (phis < hi)] = amplitude
    return out


# ----------------------------------- Dumps -----------------------------------
def to_dump(state: FourierState) -> StateDump:
    return StateDump(
        n_min=state.n_min,
        n_max=state.n_max,
        re=state.coeffs.real.tolist(),
        im=state.coeffs.imag.tolist(),
    )


def from_dump(dump: StateDump, norm_tol: Optional[float] = None) -> FourierState:
    """Rebuild a state bit for bit; it is checked for normalization but never rescaled."""
    coeffs = np.asarray(dump.re, dtype=float) + 1j * np.asarray(dump.im, dtype=float)
    state = FourierState(dump.n_min, dump.n_max, coeffs)
    norm_tol = settings.NORM_TOL if norm_tol is None else norm_tol
    if not is_normalized(state, norm_tol):
        raise DomainError(f"dumped state has norm^2 {state.norm_squared!r}, not 1")
    return state
