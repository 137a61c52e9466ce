# Copyright 2026 The qswitch-thermal Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Numerical extremization of β_f over measurement angles and sweep tables.

The search is a dense coarse grid over ``(Θ, Φ)`` followed by derivative-free
coordinate refinement (bounded Brent) started from the best few local extrema
of the grid. Sweeps evaluate independent cells, optionally on a thread pool,
and always store results by grid index.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import numpy as np
import numpy.typing as npt
import pandas as pd
from scipy.ndimage import maximum_filter
from scipy.optimize import minimize_scalar

from . import closed_form
from .exceptions import InvalidParameter, NoFeasiblePoint
from .switch_sim import P_MIN, ControlSpec, MeasureSpec
from .thermal import BathConfig
from .version import __version__

logger = logging.getLogger(__name__)

COARSE_GRID = (181, 73)
BRUTE_GRID = (3601, 1441)
ANGLE_TOL = 1e-9
TIE_TOL = 1e-12
SWEEP_KINDS = ("theta-curve", "heatmap", "extrema-vs-theta", "extrema-vs-n")
FLAT_TOL = 1e-12
N_CANDIDATES = 3
MAX_SWEEPS = 20
SCAN_CHUNK = 256

_PENALTY = 1e300

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class ExtremaResult:
    """Feasible maximum and minimum of β_f over measurement directions."""

    beta_f_max: float
    angles_max: MeasureSpec
    prob_max: float
    beta_f_min: float
    angles_min: MeasureSpec
    prob_min: float

    def as_dict(self) -> Dict[str, float]:
        return {
            "beta_f_max": self.beta_f_max,
            "Theta_max": self.angles_max.Theta,
            "Phi_max": self.angles_max.Phi,
            "prob_max": self.prob_max,
            "beta_f_min": self.beta_f_min,
            "Theta_min": self.angles_min.Theta,
            "Phi_min": self.angles_min.Phi,
            "prob_min": self.prob_min,
        }


@dataclass(frozen=True)
class SweepAxis:
    """A named, strictly increasing grid."""

    name: str
    values: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise InvalidParameter(f"Axis {self.name!r} must be a non-empty 1-D grid.")
        if np.any(np.diff(values) <= 0.0):
            raise InvalidParameter(f"Axis {self.name!r} must be strictly increasing.")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class SweepTable:
    """Dense row-major table over the product of its axes.

    Every entry of ``columns`` is a flat array with one value per grid point,
    ordered with the last axis varying fastest.
    """

    kind: str
    axes: Tuple[SweepAxis, ...]
    columns: Dict[str, np.ndarray]
    metadata: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        size = int(np.prod([len(a.values) for a in self.axes]))
        for name, values in self.columns.items():
            if np.shape(values) != (size,):
                raise InvalidParameter(
                    f"Column {name!r} has shape {np.shape(values)}, expected ({size},)."
                )

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(a.values) for a in self.axes)

    def grid(self, name: str) -> np.ndarray:
        """Column ``name`` reshaped to the axis grid."""
        return np.reshape(self.columns[name], self.shape)

    def to_frame(self) -> pd.DataFrame:
        mesh = np.meshgrid(*(a.values for a in self.axes), indexing="ij")
        data: Dict[str, Any] = {a.name: m.ravel() for a, m in zip(self.axes, mesh)}
        data.update(self.columns)
        return pd.DataFrame(data)


@dataclass(frozen=True)
class _Extremum:
    beta_f: float
    Theta: float
    Phi: float
    prob: float


def _ordered_map(fn: Callable[[T], R], items: Sequence[T], workers: int) -> List[R]:
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _landscape(
    b: BathConfig,
    c: ControlSpec,
    Theta: npt.ArrayLike,
    Phi: npt.ArrayLike,
    floor: float,
) -> Tuple[np.ndarray, np.ndarray]:
    terms = closed_form.evaluate_grid(
        b.beta_t1, b.beta_t2, b.beta_i, c.r, c.theta, c.phi, Theta, Phi
    )
    feasible = (terms.prob > floor) & (terms.denominator > 0.0) & (terms.numerator > 0.0)
    beta = np.where(
        feasible, -closed_form.log_ratio(terms.numerator, terms.denominator), np.nan
    )
    return beta, terms.prob


def _scan(
    b: BathConfig,
    c: ControlSpec,
    Theta_grid: np.ndarray,
    Phi_grid: np.ndarray,
    floor: float,
) -> Tuple[np.ndarray, np.ndarray]:
    beta = np.empty((Theta_grid.size, Phi_grid.size))
    prob = np.empty_like(beta)
    for start in range(0, Theta_grid.size, SCAN_CHUNK):
        rows = slice(start, start + SCAN_CHUNK)
        beta[rows], prob[rows] = _landscape(
            b, c, Theta_grid[rows, None], Phi_grid[None, :], floor
        )
    return beta, prob


def _pick(
    score: np.ndarray,
    prob: np.ndarray,
    Theta_grid: np.ndarray,
    Phi_grid: np.ndarray,
) -> Tuple[int, int]:
    """Best grid cell: highest score, then highest probability, smaller Θ, smaller Φ."""
    best = np.nanmax(score)
    i, j = np.nonzero(score >= best - TIE_TOL)
    order = np.lexsort((Phi_grid[j], Theta_grid[i], -prob[i, j]))
    return int(i[order[0]]), int(j[order[0]])


def _local_peaks(score: np.ndarray, limit: int) -> List[Tuple[int, int]]:
    filled = np.where(np.isnan(score), -np.inf, score)
    peak = maximum_filter(filled, size=3, mode=("nearest", "wrap"))
    flat = np.flatnonzero(np.isfinite(filled) & (filled >= peak))
    order = np.argsort(-filled.ravel()[flat], kind="stable")[:limit]
    return [
        (int(i), int(j))
        for i, j in zip(*np.unravel_index(flat[order], score.shape))
    ]


def _refine(
    objective: Callable[[float, float], float],
    start: Tuple[float, float],
    steps: Tuple[float, float],
    pin_phi: bool,
    tol: float,
) -> Tuple[float, float, float]:
    """Alternate bounded 1-D minimizations in Θ and Φ around ``start``."""
    Theta, Phi = start
    value = objective(Theta, Phi)
    for sweep in range(MAX_SWEEPS):
        previous = value
        moved = 0.0
        lo, hi = max(0.0, Theta - steps[0]), min(math.pi, Theta + steps[0])
        if hi > lo:
            res = minimize_scalar(
                lambda t: objective(t, Phi),
                bounds=(lo, hi),
                method="bounded",
                options={"xatol": tol},
            )
            if res.fun < value:
                moved = max(moved, abs(res.x - Theta))
                Theta, value = float(res.x), float(res.fun)
        if not pin_phi and steps[1] > 0.0:
            res = minimize_scalar(
                lambda f: objective(Theta, f),
                bounds=(Phi - steps[1], Phi + steps[1]),
                method="bounded",
                options={"xatol": tol},
            )
            if res.fun < value:
                moved = max(moved, abs(res.x - Phi))
                Phi, value = float(res.x), float(res.fun)
        if moved < tol or previous - value <= 4e-16 * max(1.0, abs(value)):
            logger.debug("Refinement converged after %d sweeps", sweep + 1)
            break
    return Theta, Phi, value


def _extremum(
    b: BathConfig,
    c: ControlSpec,
    sense: float,
    Theta_grid: np.ndarray,
    Phi_grid: np.ndarray,
    beta: np.ndarray,
    prob: np.ndarray,
    floor: float,
    refine: bool,
    pin_phi: bool,
    tol: float,
) -> _Extremum:
    score = sense * beta
    i, j = _pick(score, prob, Theta_grid, Phi_grid)
    best = _Extremum(float(beta[i, j]), float(Theta_grid[i]), float(Phi_grid[j]), float(prob[i, j]))
    spread = np.nanmax(beta) - np.nanmin(beta)
    if not refine or spread < FLAT_TOL:
        return best

    def objective(Theta: float, Phi: float) -> float:
        value, _ = _landscape(b, c, Theta, Phi, floor)
        value = float(value)
        return _PENALTY if math.isnan(value) else -sense * value

    steps = (
        float(Theta_grid[1] - Theta_grid[0]) if Theta_grid.size > 1 else 0.0,
        float(Phi_grid[1] - Phi_grid[0]) if Phi_grid.size > 1 else 0.0,
    )
    starts = [(i, j)] + [p for p in _local_peaks(score, N_CANDIDATES) if p != (i, j)]
    for ci, cj in starts[:N_CANDIDATES]:
        Theta, Phi, value = _refine(
            objective, (float(Theta_grid[ci]), float(Phi_grid[cj])), steps, pin_phi, tol
        )
        if value >= _PENALTY:
            continue
        candidate_beta = -sense * value
        _, p = _landscape(b, c, Theta, Phi, floor)
        candidate = _Extremum(candidate_beta, Theta, Phi, float(p))
        gain = sense * (candidate.beta_f - best.beta_f)
        if gain > TIE_TOL or (gain >= -TIE_TOL and candidate.prob > best.prob):
            best = candidate
    return best


def _grids(shape: Tuple[int, int]) -> Tuple[np.ndarray, np.ndarray]:
    n_theta, n_phi = shape
    if n_theta < 2 or n_phi < 2:
        raise InvalidParameter(f"Search grid needs at least 2x2 points, got {shape}.")
    return np.linspace(0.0, math.pi, n_theta), np.linspace(0.0, 2.0 * math.pi, n_phi)


def _measure(e: _Extremum) -> MeasureSpec:
    return MeasureSpec(e.Theta, e.Phi)


def find_extrema(
    b: BathConfig,
    c: ControlSpec,
    *,
    grid: Tuple[int, int] = COARSE_GRID,
    verify: bool = False,
    brute_grid: Tuple[int, int] = BRUTE_GRID,
    pin_phi: bool = False,
    p_min: float = P_MIN,
    min_prob: Optional[float] = None,
    angle_tol: float = ANGLE_TOL,
) -> ExtremaResult:
    """Global feasible maximum and minimum of β_f over ``(Θ, Φ)``.

    Args:
        b (BathConfig): Bath temperatures and initial system temperature.
        c (ControlSpec): Control-qubit preparation.
        grid (Tuple[int, int]): Coarse ``(Θ, Φ)`` resolution; Φ includes 2π.
        verify (bool): Scan ``brute_grid`` exhaustively and skip refinement.
        pin_phi (bool): Search the maximum at ``Φ = φ`` and the minimum at
            ``Φ = φ + π`` only.
        p_min (float): Points with success probability at or below this are
            excluded.
        min_prob (Optional[float]): Stricter probability floor, used to trade
            temperature shift against postselection rate.
        angle_tol (float): Refinement tolerance in radians.

    Returns:
        (ExtremaResult): Extremal β_f with their directions and probabilities.

    Raises:
        NoFeasiblePoint: every grid point is excluded by the probability floor.
    """
    floor = max(p_min, min_prob or 0.0)
    Theta_grid, Phi_grid = _grids(brute_grid if verify else grid)
    logger.debug("Searching %dx%d grid for %s", Theta_grid.size, Phi_grid.size, c)
    shared = None if pin_phi else _scan(b, c, Theta_grid, Phi_grid, floor)
    results = []
    for sense, phi_pin in ((1.0, c.phi), (-1.0, c.phi + math.pi)):
        phis = np.array([phi_pin]) if pin_phi else Phi_grid
        beta, prob = _scan(b, c, Theta_grid, phis, floor) if shared is None else shared
        if np.all(np.isnan(beta)):
            raise NoFeasiblePoint(
                f"No measurement direction has success probability above {floor:.1e} "
                f"for {c} and {b}."
            )
        results.append(
            _extremum(
                b, c, sense, Theta_grid, phis, beta, prob, floor,
                refine=not verify, pin_phi=pin_phi, tol=angle_tol,
            )
        )
        logger.debug("Extremum (sense=%+.0f) for %s: %s", sense, c, results[-1])
    top, bottom = results
    return ExtremaResult(
        beta_f_max=top.beta_f,
        angles_max=_measure(top),
        prob_max=top.prob,
        beta_f_min=bottom.beta_f,
        angles_min=_measure(bottom),
        prob_min=bottom.prob,
    )


def theta_curve_grid(points: int = 181) -> np.ndarray:
    """Cell-centred θ grid ``(k + ½)π/points`` that avoids the poles."""
    return (np.arange(points) + 0.5) * math.pi / points


def _metadata(b: BathConfig, **extra: Any) -> Dict[str, str]:
    meta = {
        "beta_t1": repr(b.beta_t1),
        "beta_t2": repr(b.beta_t2),
        "beta_i": repr(b.beta_i),
    }
    meta.update({k: repr(v) if isinstance(v, float) else str(v) for k, v in extra.items()})
    meta["version"] = __version__
    return meta


def optimal_theta_curve(
    b: BathConfig,
    r: float,
    theta_grid: Optional[npt.ArrayLike] = None,
    *,
    Theta_points: int = COARSE_GRID[0],
    verify: bool = False,
    p_min: float = P_MIN,
    angle_tol: float = ANGLE_TOL,
    workers: int = 1,
) -> SweepTable:
    """Θ maximizing β_f at ``Φ = φ = 0`` for each control polar angle θ.

    Rows where the objective is flat in Θ, or nothing is feasible, are
    flagged in ``excluded`` and carry NaN.
    """
    thetas = SweepAxis("theta", theta_curve_grid() if theta_grid is None else theta_grid)
    n_Theta = int(round(math.pi / 0.0005)) + 1 if verify else Theta_points
    Theta_grid = np.linspace(0.0, math.pi, n_Theta)
    phis = np.array([0.0])

    def row(theta: float) -> Tuple[float, float, int]:
        c = ControlSpec(r, theta, 0.0)
        beta, prob = _scan(b, c, Theta_grid, phis, p_min)
        if np.all(np.isnan(beta)) or np.nanmax(beta) - np.nanmin(beta) < FLAT_TOL:
            return math.nan, math.nan, 1
        e = _extremum(
            b, c, 1.0, Theta_grid, phis, beta, prob, p_min,
            refine=not verify, pin_phi=True, tol=angle_tol,
        )
        return e.Theta, e.beta_f, 0

    rows = _ordered_map(row, list(thetas.values), workers)
    return SweepTable(
        kind="theta-curve",
        axes=(thetas,),
        columns={
            "Theta_opt": np.array([x[0] for x in rows]),
            "beta_f": np.array([x[1] for x in rows]),
            "excluded": np.array([x[2] for x in rows], dtype=np.int8),
        },
        metadata=_metadata(b, r=r, phi=0.0, Theta_points=n_Theta, verify=verify),
    )


def heatmap(
    b: BathConfig,
    r: float,
    delta_phi: float,
    theta_grid: Optional[npt.ArrayLike] = None,
    Theta_grid: Optional[npt.ArrayLike] = None,
    *,
    p_min: float = P_MIN,
) -> SweepTable:
    """Temperature shift ``β_f - β_T1`` over ``(θ, Θ)`` at ``φ = 0``, ``Φ = delta_phi``."""
    default = np.linspace(0.0, math.pi, COARSE_GRID[0])
    thetas = SweepAxis("theta", default if theta_grid is None else theta_grid)
    Thetas = SweepAxis("Theta", default if Theta_grid is None else Theta_grid)
    c_grid = thetas.values[:, None]
    m_grid = Thetas.values[None, :]
    c = ControlSpec(r, 0.0)
    terms = closed_form.evaluate_grid(
        b.beta_t1, b.beta_t2, b.beta_i, c.r, c_grid, c.phi, m_grid, delta_phi
    )
    excluded = (terms.prob <= p_min) | (terms.denominator <= 0.0) | (terms.numerator <= 0.0)
    beta = -closed_form.log_ratio(terms.numerator, terms.denominator)
    delta_beta = np.where(excluded, np.nan, beta - b.beta_t1)
    inverted = int(np.sum(~excluded & (beta < 0.0)))
    logger.info(
        "Heat map %dx%d: %d excluded cells, %d inverted cells",
        thetas.values.size, Thetas.values.size, int(excluded.sum()), inverted,
    )
    return SweepTable(
        kind="heatmap",
        axes=(thetas, Thetas),
        columns={
            "delta_beta": delta_beta.ravel(),
            "excluded": excluded.astype(np.int8).ravel(),
        },
        metadata=_metadata(b, r=r, phi=0.0, delta_phi=float(delta_phi)),
    )


def _safe_extrema(b: BathConfig, c: ControlSpec, **kwargs: Any) -> Optional[ExtremaResult]:
    try:
        return find_extrema(b, c, **kwargs)
    except NoFeasiblePoint:
        logger.info("No feasible point for %s, %s", b, c)
        return None


def extrema_vs_theta(
    b: BathConfig,
    r: float,
    theta_grid: Optional[npt.ArrayLike] = None,
    *,
    grid: Tuple[int, int] = COARSE_GRID,
    p_min: float = P_MIN,
    angle_tol: float = ANGLE_TOL,
    workers: int = 1,
) -> SweepTable:
    """Per-θ extrema over ``(Θ, Φ)``; the inner layer of :func:`extrema_vs_n`."""
    thetas = SweepAxis(
        "theta", np.linspace(0.0, math.pi, 37) if theta_grid is None else theta_grid
    )

    def cell(theta: float) -> Optional[ExtremaResult]:
        return _safe_extrema(
            b, ControlSpec(r, theta, 0.0), grid=grid, p_min=p_min, angle_tol=angle_tol
        )

    found = _ordered_map(cell, list(thetas.values), workers)
    names = ("beta_f_max", "Theta_max", "Phi_max", "prob_max",
             "beta_f_min", "Theta_min", "Phi_min", "prob_min")
    columns = {
        name: np.array([math.nan if e is None else e.as_dict()[name] for e in found])
        for name in names
    }
    columns["excluded"] = np.array([e is None for e in found], dtype=np.int8)
    return SweepTable(
        kind="extrema-vs-theta",
        axes=(thetas,),
        columns=columns,
        metadata=_metadata(b, r=r, phi=0.0, grid=f"{grid[0]}x{grid[1]}"),
    )


def extrema_vs_n(
    beta_t1: float,
    beta_i: float,
    n_grid: npt.ArrayLike,
    r_list: Sequence[float],
    theta_grid: Optional[npt.ArrayLike] = None,
    *,
    grid: Tuple[int, int] = COARSE_GRID,
    p_min: float = P_MIN,
    angle_tol: float = ANGLE_TOL,
    workers: int = 1,
) -> SweepTable:
    """Globally optimized ``β_f^max/β_T1`` and ``β_f^min/β_T1`` against ``n = β_T2/β_T1``.

    For each ``(n, r)`` the extrema over ``(Θ, Φ)`` are found on every θ of
    ``theta_grid`` (φ = 0) and then extremized over θ.
    """
    if beta_t1 <= 0.0:
        raise InvalidParameter(f"beta_t1 must be positive to normalize, got {beta_t1}.")
    ns = SweepAxis("n", n_grid)
    rs = SweepAxis("r", sorted(set(float(r) for r in r_list)))
    thetas = np.linspace(0.0, math.pi, 37) if theta_grid is None else np.asarray(theta_grid, float)
    cells = [(n, r, theta) for n in ns.values for r in rs.values for theta in thetas]

    def cell(args: Tuple[float, float, float]) -> Optional[ExtremaResult]:
        n, r, theta = args
        return _safe_extrema(
            BathConfig.from_asymmetry(beta_t1, n, beta_i),
            ControlSpec(r, theta, 0.0),
            grid=grid, p_min=p_min, angle_tol=angle_tol,
        )

    found = _ordered_map(cell, cells, workers)
    per_pair = np.reshape(np.array(found, dtype=object), (ns.values.size, rs.values.size, thetas.size))
    top = np.full(per_pair.shape[:2], math.nan)
    bottom = np.full(per_pair.shape[:2], math.nan)
    for idx in np.ndindex(*per_pair.shape[:2]):
        feasible = [e for e in per_pair[idx] if e is not None]
        if feasible:
            top[idx] = max(e.beta_f_max for e in feasible) / beta_t1
            bottom[idx] = min(e.beta_f_min for e in feasible) / beta_t1
    return SweepTable(
        kind="extrema-vs-n",
        axes=(ns, rs),
        columns={
            "beta_f_max_norm": top.ravel(),
            "beta_f_min_norm": bottom.ravel(),
            "excluded": np.isnan(top).astype(np.int8).ravel(),
        },
        metadata={
            "beta_t1": repr(float(beta_t1)),
            "beta_i": repr(float(beta_i)),
            "phi": repr(0.0),
            "theta_points": str(thetas.size),
            "grid": f"{grid[0]}x{grid[1]}",
            "version": __version__,
        },
    )
