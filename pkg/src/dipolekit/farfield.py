"""Far-field pattern, directivity, and beamwidth from a solved current.

The E-plane cut is built by summing the node currents as short radiators
with the standard sin(theta) element factor and the axial phase term; by
symmetry the H-plane cut of a z-directed dipole is flat. Directivity is
integrated on the theta grid with the trapezoid rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DipolekitError
from .mom import CurrentDistribution, SegmentMesh, wavenumber


class DegeneratePattern(DipolekitError):
    """The sampled pattern carries no power."""


#: default polar sampling grid, degrees (open at the poles where E = 0)
DEFAULT_THETA_DEG = np.arange(0.5, 180.0, 0.5)


@dataclass(frozen=True)
class PatternCut:
    """One principal-plane cut, normalized so max(field_db) == 0."""

    plane: str                 # "E" or "H"
    angles_deg: np.ndarray
    field_db: np.ndarray
    directivity_dbi: float
    hpbw_deg: float


def _normalized_db(u: np.ndarray) -> np.ndarray:
    peak = np.max(u)
    if peak <= 0:
        raise DegeneratePattern("pattern has no radiated power")
    floor = peak * 1e-30
    return 10.0 * np.log10(np.maximum(u, floor) / peak)


def radiation_intensity(current: CurrentDistribution, mesh: SegmentMesh,
                        f: float, eps_e: float = 1.0,
                        theta_deg: np.ndarray = DEFAULT_THETA_DEG) -> np.ndarray:
    """Unnormalized U(theta) for the node currents on the mesh."""
    k = wavenumber(f, eps_e)
    theta = np.radians(np.asarray(theta_deg, dtype=float))
    phase = np.exp(1j * k * np.outer(np.cos(theta), mesh.nodes))
    e_field = np.sin(theta) * (phase @ current.currents)
    return np.abs(e_field) ** 2


def directivity_from_intensity(theta_deg: np.ndarray, u: np.ndarray) -> float:
    """D = 2 U_max / integral(U sin(theta) dtheta), trapezoid rule."""
    theta = np.radians(np.asarray(theta_deg, dtype=float))
    p_rad = np.trapezoid(u * np.sin(theta), theta)
    if p_rad <= 0:
        raise DegeneratePattern("pattern has no radiated power")
    return float(2.0 * np.max(u) / p_rad)


def hpbw_from_cut(angles_deg: np.ndarray, field_db: np.ndarray) -> float:
    """Width of the -3 dB region around the peak, linearly interpolated.

    Returns the full angular span of the grid when the pattern never
    drops 3 dB below its maximum (e.g. an omnidirectional cut).
    """
    angles = np.asarray(angles_deg, dtype=float)
    db = np.asarray(field_db, dtype=float)
    i_pk = int(np.argmax(db))
    level = db[i_pk] - 3.0

    def _edge(idx_range, forward):
        prev = i_pk
        for i in idx_range:
            if db[i] <= level:
                # interpolate between prev (above) and i (at/below)
                frac = (db[prev] - level) / (db[prev] - db[i])
                return angles[prev] + frac * (angles[i] - angles[prev])
            prev = i
        return None

    right = _edge(range(i_pk + 1, len(db)), True)
    left = _edge(range(i_pk - 1, -1, -1), False)
    if right is None or left is None:
        return float(angles[-1] - angles[0])
    return float(right - left)


def pattern_from_current(current: CurrentDistribution, mesh: SegmentMesh,
                         f: float, eps_e: float = 1.0,
                         theta_deg: np.ndarray = DEFAULT_THETA_DEG) -> PatternCut:
    """E-plane cut with directivity and half-power beamwidth."""
    u = radiation_intensity(current, mesh, f, eps_e, theta_deg)
    d = directivity_from_intensity(theta_deg, u)
    field_db = _normalized_db(u)
    return PatternCut(plane="E", angles_deg=np.asarray(theta_deg, dtype=float),
                      field_db=field_db,
                      directivity_dbi=float(10.0 * np.log10(d)),
                      hpbw_deg=hpbw_from_cut(theta_deg, field_db))


def h_plane_cut(directivity_dbi: float,
                phi_deg: np.ndarray | None = None) -> PatternCut:
    """Azimuth cut at theta = 90 deg: flat by axial symmetry."""
    if phi_deg is None:
        phi_deg = np.arange(0.0, 360.0, 1.0)
    phi = np.asarray(phi_deg, dtype=float)
    return PatternCut(plane="H", angles_deg=phi, field_db=np.zeros_like(phi),
                      directivity_dbi=float(directivity_dbi),
                      hpbw_deg=float(phi[-1] - phi[0]))
