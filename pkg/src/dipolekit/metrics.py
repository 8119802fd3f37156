"""Reflection-based figures of merit: S11, VSWR, bandwidth, resonance."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import NonPassiveError, NoResonanceError

#: sign convention: return loss is reported as a negative dB number
#: (a deeper, more negative value means a better match).
RETURN_LOSS_SIGN = -1.0

#: reference impedance for every sweep, ohm
DEFAULT_Z0 = 50.0

#: default match threshold for bandwidth extraction, dB (VSWR ~ 2)
DEFAULT_BW_THRESHOLD_DB = -10.0

#: sentinel for a perfect match, displayed as "< -100 dB"
PERFECT_MATCH_DB = float("-inf")


def reflection_coefficient(z_in: complex, z0: float = DEFAULT_Z0) -> complex:
    """Gamma = (Z - Z0) / (Z + Z0) against a real reference impedance."""
    if z0 <= 0:
        raise ValueError("reference impedance must be > 0")
    if z_in.real < 0:
        raise NonPassiveError("Re(Z_in) = %g < 0 is not passive" % z_in.real)
    return (z_in - z0) / (z_in + z0)


def return_loss_db(gamma: complex) -> float:
    """20*log10|gamma|, always <= 0; -inf for a perfect match."""
    mag = abs(gamma)
    if mag > 1.0 + 1e-12:
        raise ValueError("|gamma| = %g > 1 is not passive" % mag)
    if mag == 0.0:
        return PERFECT_MATCH_DB
    return 20.0 * math.log10(min(mag, 1.0))


def vswr(gamma: complex) -> float:
    """(1+|gamma|)/(1-|gamma|); infinite for total reflection."""
    mag = abs(gamma)
    if mag > 1.0 + 1e-12:
        raise ValueError("|gamma| = %g > 1 is not passive" % mag)
    if mag >= 1.0:
        return math.inf
    return (1.0 + mag) / (1.0 - mag)


def gamma_from_vswr(s: float) -> float:
    """|gamma| corresponding to a VSWR value."""
    if s < 1.0:
        raise ValueError("VSWR must be >= 1, got %g" % s)
    return (s - 1.0) / (s + 1.0)


def gamma_from_return_loss(rl_db: float) -> float:
    """|gamma| corresponding to a (negative) return loss in dB."""
    if rl_db > 0:
        raise ValueError("return loss follows the negative-dB convention")
    return 10.0 ** (rl_db / 20.0)


@dataclass(frozen=True)
class SweepSample:
    f: float            # Hz
    z_in: complex       # ohm
    gamma: complex
    s11_db: float
    vswr: float


@dataclass(frozen=True)
class SweepResult:
    """Ordered impedance / S11 / VSWR samples over a frequency band."""

    z0: float = DEFAULT_Z0
    samples: tuple[SweepSample, ...] = field(default_factory=tuple)

    def __post_init__(self):
        fs = [s.f for s in self.samples]
        if any(b <= a for a, b in zip(fs, fs[1:])):
            raise ValueError("sweep samples must be strictly ascending in f")

    @property
    def frequencies(self) -> list[float]:
        return [s.f for s in self.samples]


def make_sample(f: float, z_in: complex, z0: float = DEFAULT_Z0) -> SweepSample:
    g = reflection_coefficient(z_in, z0)
    return SweepSample(f=f, z_in=z_in, gamma=g,
                       s11_db=return_loss_db(g), vswr=vswr(g))


@dataclass(frozen=True)
class BandwidthResult:
    percent: float
    f_low: float
    f_high: float
    f_center: float
    edge_clipped: bool


def fractional_bandwidth(sweep: SweepResult,
                         threshold_db: float = DEFAULT_BW_THRESHOLD_DB) -> BandwidthResult:
    """Contiguous band around the deepest S11 dip meeting the threshold.

    Band edges are linearly interpolated between samples; the center is the
    frequency of the deepest sample. Bands cut off by the sweep limits are
    flagged edge_clipped.
    """
    if threshold_db >= 0:
        raise ValueError("threshold must be negative dB")
    s = sweep.samples
    if not s:
        raise ValueError("empty sweep")
    i0 = min(range(len(s)), key=lambda i: s[i].s11_db)
    f_c = s[i0].f
    if s[i0].s11_db > threshold_db:
        return BandwidthResult(0.0, f_c, f_c, f_c, False)
    lo = i0
    while lo > 0 and s[lo - 1].s11_db <= threshold_db:
        lo -= 1
    hi = i0
    while hi < len(s) - 1 and s[hi + 1].s11_db <= threshold_db:
        hi += 1
    clipped = False

    def cross(inside: int, outside: int) -> float:
        a, b = s[inside], s[outside]
        return a.f + (b.f - a.f) * (threshold_db - a.s11_db) / (b.s11_db - a.s11_db)

    if lo == 0:
        f_lo, clipped = s[0].f, True
    else:
        f_lo = cross(lo, lo - 1)
    if hi == len(s) - 1:
        f_hi, clipped = s[-1].f, True
    else:
        f_hi = cross(hi, hi + 1)
    return BandwidthResult(100.0 * (f_hi - f_lo) / f_c, f_lo, f_hi, f_c, clipped)


def resonant_frequency(sweep: SweepResult) -> float:
    """Lowest capacitive-to-inductive reactance zero crossing, interpolated."""
    s = sweep.samples
    for a, b in zip(s, s[1:]):
        xa, xb = a.z_in.imag, b.z_in.imag
        if xa < 0.0 <= xb:
            return a.f + (b.f - a.f) * (-xa) / (xb - xa)
    raise NoResonanceError("no - to + reactance crossing inside the sweep band")


def s11_minimum(sweep: SweepResult) -> SweepSample:
    """The deepest-match sample of a sweep."""
    if not sweep.samples:
        raise ValueError("empty sweep")
    return min(sweep.samples, key=lambda smp: smp.s11_db)
