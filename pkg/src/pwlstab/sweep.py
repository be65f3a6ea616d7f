"""Deterministic parameter-plane sweeps over (tau_L, tau_R) grids.

Two modes: a Monte-Carlo sweep recording the fraction of sampled initial
points whose orbits converge to the origin, and a certificate sweep
recording the smallest generation at which the polygon-iteration stability
test succeeds.  Per-cell seeds are mixed from the base seed and the cell
indices, so results are bit-identical no matter how cells are scheduled
across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import RegimeError
from .maps import ORBIT_BUDGET, NormalForm2D
from .polygons import CertificateStatus, ga92
from .sphere import rho_sampled

_MASK64 = (1 << 64) - 1


def mix_seed(base_seed: int, i: int, j: int) -> int:
    """Stable 64-bit seed for cell (i, j); independent of execution order."""
    z = (
        base_seed
        + 0x9E3779B97F4A7C15
        + i * 0xA24BAED4963EE407
        + j * 0x9FB21C651E98DF25
    ) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class GridSpec:
    """Rectangular grid of (tau_L, tau_R) values at fixed determinants."""

    tau_L_range: tuple[float, float]
    tau_R_range: tuple[float, float]
    nx: int
    ny: int
    delta_L: float
    delta_R: float

    def __post_init__(self) -> None:
        if self.nx < 1 or self.ny < 1:
            raise ValueError("grid must have at least one cell per axis")
        for n, (lo, hi) in ((self.nx, self.tau_L_range), (self.ny, self.tau_R_range)):
            if not (lo <= hi) or (n > 1 and not lo < hi):
                raise ValueError("parameter ranges must be non-degenerate")
        if not (self.delta_L > 0.0 > self.delta_R):
            raise ValueError("sweeps require delta_L > 0 > delta_R")

    def tau_L_values(self) -> np.ndarray:
        return np.linspace(self.tau_L_range[0], self.tau_L_range[1], self.nx)

    def tau_R_values(self) -> np.ndarray:
        return np.linspace(self.tau_R_range[0], self.tau_R_range[1], self.ny)


class GridMode(Enum):
    MEASURE = "measure"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class GridResult:
    """Per-cell sweep outputs, indexed [tau_L index, tau_R index].

    Measure mode: ``values`` holds converged fractions and ``undecided`` the
    budget-exhausted fractions.  Asymptotic mode: ``values`` holds the
    smallest self-mapping generation, or -1 where the certificate declined
    (out of regime, not decided, or an instability witness was found).
    """

    spec: GridSpec
    mode: GridMode
    values: np.ndarray
    undecided: np.ndarray | None = None
    m_max: int | None = None


def _measure_row(args) -> tuple[int, list[float], list[float]]:
    (i, tl, tr_values, dl, dr, samples, budget, base_seed) = args
    fr: list[float] = []
    un: list[float] = []
    for j, tr in enumerate(tr_values):
        try:
            m = NormalForm2D(tl, dl, tr, dr).pwl()
            est = rho_sampled(
                m,
                n_samples=samples,
                orbit_budget=budget,
                seed=mix_seed(base_seed, i, j),
            )
            fr.append(est.rho_hat)
            un.append(est.undecided_fraction)
        except Exception:
            fr.append(0.0)
            un.append(1.0)
    return i, fr, un


def _asymptotic_row(args) -> tuple[int, list[int]]:
    (i, tl, tr_values, dl, dr, m_max, k_max) = args
    out: list[int] = []
    for tr in tr_values:
        params = NormalForm2D(tl, dl, tr, dr)
        if not params.tau_L < params.left_spiral_bound:
            out.append(-1)  # out of regime for the certificate
            continue
        try:
            verdict = ga92(params, m_max=m_max, k_max=k_max)
        except (RegimeError, ValueError, ArithmeticError):
            out.append(-1)
            continue
        if verdict.status is CertificateStatus.STABLE:
            out.append(verdict.m)
        else:
            out.append(-1)
    return i, out


def _run_rows(row_fn, payloads, workers: int):
    if workers <= 1:
        return [row_fn(p) for p in payloads]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(row_fn, payloads))


def sweep_measure(
    spec: GridSpec,
    samples_per_cell: int = 100,
    orbit_budget: int = ORBIT_BUDGET,
    base_seed: int = 0,
    workers: int = 1,
) -> GridResult:
    """Monte-Carlo converged-fraction sweep; deterministic per (spec, seed)."""
    if samples_per_cell < 1:
        raise ValueError("samples_per_cell must be at least 1")
    tl_vals = spec.tau_L_values()
    tr_vals = tuple(float(t) for t in spec.tau_R_values())
    payloads = [
        (i, float(tl), tr_vals, spec.delta_L, spec.delta_R, samples_per_cell,
         orbit_budget, base_seed)
        for i, tl in enumerate(tl_vals)
    ]
    values = np.zeros((spec.nx, spec.ny))
    undecided = np.zeros((spec.nx, spec.ny))
    for i, fr, un in _run_rows(_measure_row, payloads, workers):
        values[i] = fr
        undecided[i] = un
    return GridResult(spec, GridMode.MEASURE, values, undecided)


def sweep_asymptotic(
    spec: GridSpec,
    m_max: int = 30,
    k_max: int | None = None,
    workers: int = 1,
) -> GridResult:
    """Certificate sweep recording the smallest self-mapping generation m.

    Cells outside the certificate's regime (tau_L >= 2 sqrt(delta_L)) are
    marked with the sentinel -1, as are NotDecided cells and cells with an
    instability witness.
    """
    tl_vals = spec.tau_L_values()
    tr_vals = tuple(float(t) for t in spec.tau_R_values())
    payloads = [
        (i, float(tl), tr_vals, spec.delta_L, spec.delta_R, m_max, k_max)
        for i, tl in enumerate(tl_vals)
    ]
    values = np.full((spec.nx, spec.ny), -1, dtype=np.int64)
    for i, row in _run_rows(_asymptotic_row, payloads, workers):
        values[i] = row
    return GridResult(spec, GridMode.ASYMPTOTIC, values, None, m_max)


def write_grid_csv(result: GridResult, path) -> None:
    """Rows `tau_L,tau_R,value[,undecided]`, tau_R varying fastest from (lo,lo)."""
    tl_vals = result.spec.tau_L_values()
    tr_vals = result.spec.tau_R_values()
    with_und = result.undecided is not None
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write("tau_L,tau_R,value,undecided\n" if with_und else "tau_L,tau_R,value\n")
            for i, tl in enumerate(tl_vals):
                for j, tr in enumerate(tr_vals):
                    v = result.values[i, j]
                    cell = str(int(v)) if result.mode is GridMode.ASYMPTOTIC else repr(float(v))
                    line = f"{float(tl)!r},{float(tr)!r},{cell}"
                    if with_und:
                        line += f",{float(result.undecided[i, j])!r}"
                    fh.write(line + "\n")
    except OSError as exc:
        raise OSError(f"cannot write grid CSV to {path}: {exc}") from exc


def write_grid_pgm(result: GridResult, path) -> None:
    """Binary 8-bit PGM: tau_L left to right, tau_R top (high) to bottom (low).

    Measure mode paints converged cells dark: pixel = 255 * (1 - fraction),
    so the stability region shows as the black shape.  Asymptotic mode paints
    sentinel cells black (0) and generation m as 255 at m = 1 descending
    linearly to m = m_max (never below 1, which keeps decided cells visibly
    distinct from sentinel black).
    """
    nx, ny = result.spec.nx, result.spec.ny
    pixels = np.zeros((ny, nx), dtype=np.uint8)
    for row in range(ny):
        j = ny - 1 - row
        for i in range(nx):
            v = float(result.values[i, j])
            if result.mode is GridMode.MEASURE:
                px = int(round(255.0 * (1.0 - v)))
            else:
                if v < 0:
                    px = 0
                else:
                    if not result.m_max:
                        raise ValueError("asymptotic grid result is missing m_max")
                    px = int(round(255.0 * (result.m_max - v + 1.0) / result.m_max))
                    px = max(px, 1)
            pixels[row, i] = min(max(px, 0), 255)
    try:
        with open(path, "wb") as fh:
            fh.write(f"P5\n{nx} {ny}\n255\n".encode("ascii"))
            fh.write(pixels.tobytes())
    except OSError as exc:
        raise OSError(f"cannot write PGM to {path}: {exc}") from exc
