"""State representations on the circle and on the line.

All averages on the circle use the measure dphi/2pi, so the basis functions
e^{in phi} have unit norm and a packet f is normalized when
(1/2pi) * integral |f|^2 dphi = 1. On the line the measure is plain dx.
"""
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .config import settings
from .exceptions import BadRange, DomainError

TWO_PI = 2.0 * math.pi

# Segments may touch; anything overlapping by more than this is rejected.
_OVERLAP_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class FourierState:
    """Amplitudes c_n of e^{in phi} for n in [n_min, n_max]."""

    n_min: int
    n_max: int
    coeffs: np.ndarray
    removed_mass: float = 0.0

    def __post_init__(self):
        if self.n_min > self.n_max:
            raise BadRange(f"n_min={self.n_min} exceeds n_max={self.n_max}")
        coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if coeffs.ndim != 1 or coeffs.size != self.n_max - self.n_min + 1:
            raise BadRange(
                f"expected {self.n_max - self.n_min + 1} coefficients for "
                f"n in [{self.n_min}, {self.n_max}], got shape {coeffs.shape}"
            )
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def ns(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    @property
    def size(self) -> int:
        return self.coeffs.size

    @property
    def norm_squared(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)

    @property
    def tail_mass(self) -> float:
        """Weight sitting on the two edge sites of the lattice."""
        if self.size == 1:
            return float(abs(self.coeffs[0]) ** 2)
        return float(abs(self.coeffs[0]) ** 2 + abs(self.coeffs[-1]) ** 2)

    @property
    def truncated(self) -> bool:
        return self.removed_mass > settings.TAIL_TOL

    def coefficient(self, n: int) -> complex:
        if n < self.n_min or n > self.n_max:
            return 0j
        return complex(self.coeffs[n - self.n_min])

    def with_coeffs(self, coeffs: np.ndarray) -> "FourierState":
        return FourierState(self.n_min, self.n_max, coeffs, self.removed_mass)


@dataclass(frozen=True)
class Segment:
    """Arc [start, end] carrying a constant complex amplitude."""

    start: float
    end: float
    amplitude: complex

    @property
    def width(self) -> float:
        return self.end - self.start

    @property
    def density(self) -> float:
        return abs(self.amplitude) ** 2


@dataclass(frozen=True)
class PiecewisePacket:
    """2pi-periodic wavefunction made of constant-amplitude arcs.

    Endpoints are kept exactly as given; they are reduced modulo 2pi only
    when the packet is evaluated inside an integration window.
    """

    segments: tuple[Segment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        segments = tuple(
            seg if isinstance(seg, Segment) else Segment(float(seg[0]), float(seg[1]), complex(seg[2]))
            for seg in self.segments
        )
        object.__setattr__(self, "segments", segments)
        for seg in segments:
            if not seg.end > seg.start:
                raise DomainError(f"arc [{seg.start}, {seg.end}] has non-positive width")
        if self.covered_measure > TWO_PI + _OVERLAP_SLACK:
            raise DomainError(f"arcs cover {self.covered_measure} > 2pi")
        pieces = sorted(self.base_pieces())
        for (_, hi, _), (lo, _, _) in zip(pieces, pieces[1:]):
            if lo < hi - _OVERLAP_SLACK:
                raise DomainError("arcs overlap modulo 2pi")

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.segments)

    @property
    def covered_measure(self) -> float:
        return sum(seg.width for seg in self.segments)

    @property
    def norm_squared(self) -> float:
        return sum(seg.density * seg.width for seg in self.segments) / TWO_PI

    def base_pieces(self) -> list[tuple[float, float, complex]]:
        """Arcs cut into pieces lying inside [0, 2pi)."""
        return list(window_pieces(self, 0.0))


def window_pieces(packet: PiecewisePacket, lam: float) -> Iterator[tuple[float, float, complex]]:
    """Yield (lo, hi, amplitude) with every point represented inside [lam, lam + 2pi).

    Arcs crossing the window seam are split in two.
    """
    top = lam + TWO_PI
    for seg in packet.segments:
        lo = lam + math.fmod(seg.start - lam, TWO_PI)
        if lo < lam:
            lo += TWO_PI
        hi = lo + seg.width
        if hi <= top:
            yield lo, hi, seg.amplitude
        else:
            yield lo, top, seg.amplitude
            yield lam, hi - TWO_PI, seg.amplitude


@dataclass(frozen=True)
class LineSegment:
    x_start: float
    x_end: float
    amplitude: float

    @property
    def width(self) -> float:
        return self.x_end - self.x_start


@dataclass(frozen=True)
class LineBoxPacket:
    """Piecewise-constant real wavefunction on the real line."""

    segments: tuple[LineSegment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        segments = tuple(
            seg if isinstance(seg, LineSegment) else LineSegment(float(seg[0]), float(seg[1]), float(seg[2]))
            for seg in self.segments
        )
        object.__setattr__(self, "segments", segments)
        for seg in segments:
            if not seg.x_end > seg.x_start:
                raise DomainError(f"segment [{seg.x_start}, {seg.x_end}] has non-positive width")

    def __iter__(self) -> Iterator[LineSegment]:
        return iter(self.segments)

    @property
    def norm_squared(self) -> float:
        return sum(seg.amplitude ** 2 * seg.width for seg in self.segments)

    def density(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for seg in self.segments:
            inside = (x > seg.x_start) & (x < seg.x_end)
            out[inside] = seg.amplitude ** 2
        return out
