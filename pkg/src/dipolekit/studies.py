"""Parameter studies and length optimizers for the strip dipole.

Each study row evaluates one geometry over a frequency band and reports the
match figures at the deepest-S11 point, the -10 dB fractional bandwidth,
and the broadside directivity. Rows that fail (design rules, solver) carry
the error message instead of aborting the table.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .design import DipoleGeometry, Substrate
from .errors import BracketError, DipolekitError
from .farfield import h_plane_cut, pattern_from_current
from .metrics import DEFAULT_BW_THRESHOLD_DB, DEFAULT_Z0, SweepResult, \
    fractional_bandwidth, s11_minimum
from .mom import assemble_system, build_mesh, default_segments, \
    geometry_model, impedance_at, solve_current, sweep

#: golden-section stopping span, mm
_GOLDEN_TOL_MM = 0.1

_BISECT_TOL_MM = 0.01
_MAX_BISECTIONS = 60
_REACTANCE_TOL_OHM = 1.0
_PHI = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class StudyRow:
    """Figures of merit for one swept geometry."""

    param_mm: float
    z_in: complex | None = None        # at the probe frequency
    vswr: float | None = None          # at the deepest-S11 sample
    rl_db: float | None = None         # at the deepest-S11 sample
    bw_pct: float | None = None
    directivity_dbi: float | None = None
    error: str | None = None


def _evaluate(geometry: DipoleGeometry, substrate: Substrate, param: float,
              f_start: float, f_stop: float, f_step: float,
              f_probe: float, z0: float,
              threshold_db: float) -> StudyRow:
    result = sweep(geometry, substrate, f_start, f_stop, f_step, z0=z0)
    best = s11_minimum(result)
    bw = fractional_bandwidth(result, threshold_db)
    z_probe = impedance_at(geometry_model(geometry, substrate), f_probe)
    f_dir = bw.f_center if bw.percent > 0 else best.f
    model = geometry_model(geometry, substrate)
    mesh = build_mesh(model, default_segments(model.total_length, model.radius))
    current = solve_current(assemble_system(mesh, f_dir, model), mesh)
    cut = pattern_from_current(current, mesh, f_dir, model.eps_e)
    return StudyRow(param_mm=param, z_in=z_probe, vswr=best.vswr,
                    rl_db=best.s11_db, bw_pct=bw.percent,
                    directivity_dbi=cut.directivity_dbi)


def _study(params: Sequence[float],
           make_geometry: Callable[[float], DipoleGeometry],
           substrate: Substrate, f_start: float, f_stop: float, f_step: float,
           f_probe: float, z0: float, threshold_db: float) -> list[StudyRow]:
    rows = []
    for param in params:
        try:
            geometry = make_geometry(param)
            rows.append(_evaluate(geometry, substrate, param, f_start, f_stop,
                                  f_step, f_probe, z0, threshold_db))
        except (DipolekitError, ValueError) as exc:
            rows.append(StudyRow(param_mm=param, error=str(exc)))
    return rows


def length_study(lengths_mm: Sequence[float], substrate: Substrate,
                 f_start: float, f_stop: float, f_step: float,
                 width_mm: float = 6.0, gap_mm: float = 0.0,
                 f_probe: float = 1.8e9, z0: float = DEFAULT_Z0,
                 threshold_db: float = DEFAULT_BW_THRESHOLD_DB) -> list[StudyRow]:
    """Sweep the dipole length at fixed strip width."""
    return _study(lengths_mm,
                  lambda L: DipoleGeometry(L=L, W=width_mm, g=gap_mm),
                  substrate, f_start, f_stop, f_step, f_probe, z0,
                  threshold_db)


def width_study(widths_mm: Sequence[float], substrate: Substrate,
                f_start: float, f_stop: float, f_step: float,
                length_mm: float = 60.0, gap_mm: float = 0.0,
                f_probe: float = 1.8e9, z0: float = DEFAULT_Z0,
                threshold_db: float = DEFAULT_BW_THRESHOLD_DB) -> list[StudyRow]:
    """Sweep the strip width at fixed dipole length."""
    return _study(widths_mm,
                  lambda W: DipoleGeometry(L=length_mm, W=W, g=gap_mm),
                  substrate, f_start, f_stop, f_step, f_probe, z0,
                  threshold_db)


@dataclass(frozen=True)
class OptimizeResult:
    """Outcome of a 1-D length search."""

    length_mm: float
    z_in: complex
    s11_db: float
    iterations: int
    converged: bool
    note: str = ""


def _fixed_mesh_impedance(geometry: DipoleGeometry, substrate: Substrate,
                          f: float, n: int) -> complex:
    model = geometry_model(geometry, substrate)
    return impedance_at(model, f, n=n)


def optimize_length(substrate: Substrate, f: float,
                    l_low: float, l_high: float,
                    width_mm: float = 6.0, gap_mm: float = 0.0,
                    z0: float = DEFAULT_Z0) -> OptimizeResult:
    """Bisect for the length whose input reactance crosses zero at f.

    The segment count is fixed from the lower bound so the objective is a
    continuous function of length.
    """
    if not l_low < l_high:
        raise ValueError("need l_low < l_high")
    base = DipoleGeometry(L=l_low, W=width_mm, g=gap_mm)
    model = geometry_model(base, substrate)
    n = default_segments(l_low, model.radius)

    def x_of(L: float) -> complex:
        return _fixed_mesh_impedance(replace(base, L=L), substrate, f, n)

    z_lo, z_hi = x_of(l_low), x_of(l_high)
    if np.sign(z_lo.imag) == np.sign(z_hi.imag):
        raise BracketError(
            "reactance does not change sign on [%g, %g] mm: "
            "X(low)=%.3f ohm, X(high)=%.3f ohm"
            % (l_low, l_high, z_lo.imag, z_hi.imag))
    lo, hi = l_low, l_high
    x_lo = z_lo.imag
    z_mid = z_lo
    iterations = 0
    for iterations in range(1, _MAX_BISECTIONS + 1):
        mid = 0.5 * (lo + hi)
        z_mid = x_of(mid)
        if np.sign(z_mid.imag) == np.sign(x_lo):
            lo, x_lo = mid, z_mid.imag
        else:
            hi = mid
        if hi - lo < _BISECT_TOL_MM and abs(z_mid.imag) < _REACTANCE_TOL_OHM:
            break
    length = 0.5 * (lo + hi)
    z_fin = x_of(length)
    gamma = (z_fin - z0) / (z_fin + z0)
    s11 = 20.0 * np.log10(abs(gamma)) if abs(gamma) > 0 else -np.inf
    return OptimizeResult(length_mm=length, z_in=z_fin, s11_db=float(s11),
                          iterations=iterations,
                          converged=abs(z_fin.imag) < _REACTANCE_TOL_OHM)


def optimize_for_max_rl(substrate: Substrate, f: float,
                        l_low: float, l_high: float,
                        width_mm: float = 6.0, gap_mm: float = 0.0,
                        z0: float = DEFAULT_Z0,
                        objective: Callable[[float], float] | None = None
                        ) -> OptimizeResult:
    """Golden-section search for the deepest S11 over a length interval.

    A 9-point presample checks unimodality; if the samples are not
    unimodal the best grid point is returned with a "non-unimodal" note.
    """
    if not l_low < l_high:
        raise ValueError("need l_low < l_high")
    base = DipoleGeometry(L=l_low, W=width_mm, g=gap_mm)
    model = geometry_model(base, substrate)
    n = default_segments(l_low, model.radius)

    def z_of(L: float) -> complex:
        return _fixed_mesh_impedance(replace(base, L=L), substrate, f, n)

    if objective is None:
        def objective(L: float) -> float:
            z = z_of(L)
            gamma = abs((z - z0) / (z + z0))
            return 20.0 * np.log10(gamma) if gamma > 0 else -np.inf

    grid = np.linspace(l_low, l_high, 9)
    vals = np.array([objective(L) for L in grid])
    i_best = int(np.argmin(vals))
    diffs = np.sign(np.diff(vals))
    sign_changes = int(np.sum(np.abs(np.diff(diffs[diffs != 0])) > 0))
    note = ""
    if np.all(vals == vals[0]):
        note = "degenerate"
    elif sign_changes > 1:
        note = "non-unimodal"
    if note:
        L = float(grid[i_best]) if note == "non-unimodal" \
            else 0.5 * (l_low + l_high)
        z = z_of(L)
        return OptimizeResult(length_mm=L, z_in=z, s11_db=float(vals[i_best]),
                              iterations=len(grid), converged=False, note=note)

    lo, hi = float(grid[max(i_best - 1, 0)]), float(grid[min(i_best + 1, 8)])
    c = hi - _PHI * (hi - lo)
    d = lo + _PHI * (hi - lo)
    fc, fd = objective(c), objective(d)
    iterations = len(grid)
    while hi - lo > _GOLDEN_TOL_MM:
        iterations += 1
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _PHI * (hi - lo)
            fc = objective(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _PHI * (hi - lo)
            fd = objective(d)
    length = 0.5 * (lo + hi)
    z = z_of(length)
    return OptimizeResult(length_mm=length, z_in=z,
                          s11_db=float(objective(length)),
                          iterations=iterations, converged=True)


def study_pattern(geometry: DipoleGeometry, substrate: Substrate,
                  f: float) -> tuple:
    """Both principal-plane cuts for one geometry."""
    model = geometry_model(geometry, substrate)
    mesh = build_mesh(model, default_segments(model.total_length, model.radius))
    current = solve_current(assemble_system(mesh, f, model), mesh)
    e_cut = pattern_from_current(current, mesh, f, model.eps_e)
    return e_cut, h_plane_cut(e_cut.directivity_dbi)
