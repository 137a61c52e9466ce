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
"""Closed-form effective temperatures and postselection probabilities.

Every expression takes and returns dimensionless ``β·Δ``. The general
(asymmetric-bath) evaluator :func:`beta_f_general` is canonical;
:func:`beta_f_identical` evaluates the identical-bath expression directly and
must agree with it whenever ``β_T1 == β_T2``.

The array kernel :func:`evaluate_grid` broadcasts over any combination of
parameter arrays and is what both the scalar functions and the sweep code in
:mod:`qswitch_thermal.optimize` use.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, NamedTuple, Tuple

import numpy as np
import numpy.typing as npt

from .exceptions import DegenerateDenominator, InvalidParameter
from .switch_sim import P_MIN, ControlSpec, MeasureSpec
from .thermal import BathConfig

logger = logging.getLogger(__name__)

DENOM_MIN = 1e-12
SPLIT_LOG_RATIO = 1e8

ArrayLike = npt.ArrayLike


@dataclass(frozen=True)
class AlphaCoeffs:
    """Bath-dependent coefficients of the asymmetric-bath β_f expression."""

    a1: float
    a2: float
    a3: float
    a4: float


class StationaryPoints(NamedTuple):
    """Measurement directions extremizing β_f for identical baths."""

    maximum: MeasureSpec
    minimum: MeasureSpec


class GridTerms(NamedTuple):
    """Numerator, denominator and success probability on a broadcast grid."""

    numerator: np.ndarray
    denominator: np.ndarray
    prob: np.ndarray


def log_ratio(num: ArrayLike, den: ArrayLike, *, split: float = SPLIT_LOG_RATIO) -> np.ndarray:
    """``ln(num/den)``, as ``ln num - ln den`` when the two differ by more than ``split``."""
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        spread = np.maximum(num, den) / np.minimum(num, den)
        return np.where(spread > split, np.log(num) - np.log(den), np.log(num / den))


def alpha_coeffs(b: BathConfig) -> AlphaCoeffs:
    x1 = math.exp(-b.beta_t1)
    x2 = math.exp(-b.beta_t2)
    return AlphaCoeffs(
        a1=2.0 * math.exp(-(b.beta_t1 + b.beta_t2)) + x1 + x2,
        a2=x1 - x2,
        a3=math.exp(-(b.beta_i + b.beta_t1 + b.beta_t2)),
        a4=2.0 + x1 + x2,
    )


def gamma_coeff(beta_t: float, beta_i: float) -> float:
    """Coherence weight of the success probability for identical baths, in (0, 1)."""
    x = math.exp(-beta_t)
    xi = math.exp(-beta_i)
    return (1.0 + math.exp(-(beta_i + 2.0 * beta_t))) / ((1.0 + xi) * (1.0 + x) ** 2)


def gamma_general(b: BathConfig) -> float:
    """Asymmetric-bath counterpart of :func:`gamma_coeff`."""
    return float(_gamma_array(b.beta_t1, b.beta_t2, b.beta_i))


def _gamma_array(beta_t1: ArrayLike, beta_t2: ArrayLike, beta_i: ArrayLike) -> np.ndarray:
    beta_t1, beta_t2, beta_i = (np.asarray(v, dtype=float) for v in (beta_t1, beta_t2, beta_i))
    return (1.0 + np.exp(-(beta_i + beta_t1 + beta_t2))) / (
        (1.0 + np.exp(-beta_i)) * (1.0 + np.exp(-beta_t1)) * (1.0 + np.exp(-beta_t2))
    )


def evaluate_grid(
    beta_t1: ArrayLike,
    beta_t2: ArrayLike,
    beta_i: ArrayLike,
    r: ArrayLike,
    theta: ArrayLike,
    phi: ArrayLike,
    Theta: ArrayLike,
    Phi: ArrayLike,
) -> GridTerms:
    """Broadcast the asymmetric-bath numerator, denominator and probability.

    ``β_f = -ln(numerator/denominator)`` wherever the denominator is positive.
    """
    x1 = np.exp(-np.asarray(beta_t1, dtype=float))
    x2 = np.exp(-np.asarray(beta_t2, dtype=float))
    xi = np.exp(-np.asarray(beta_i, dtype=float))
    a1 = 2.0 * x1 * x2 + x1 + x2
    a2 = x1 - x2
    a3 = xi * x1 * x2
    a4 = 2.0 + x1 + x2

    r = np.asarray(r, dtype=float)
    cos_m = np.cos(Theta)
    cos_c = np.cos(theta)
    diag = 1.0 + r * cos_m * cos_c
    tilt = cos_m + r * cos_c
    coh = r * np.sin(Theta) * np.sin(theta) * np.cos(np.subtract(Phi, phi))

    numerator = (1.0 + xi) * (a1 * diag - a2 * tilt) + 2.0 * a3 * coh
    denominator = (1.0 + xi) * (a4 * diag + a2 * tilt) + 2.0 * coh
    prob = 0.5 * (diag + _gamma_array(beta_t1, beta_t2, beta_i) * coh)
    return GridTerms(numerator, denominator, prob)


def _check_terms(num: float, den: float, c: ControlSpec, m: MeasureSpec, denom_min: float) -> None:
    if den < denom_min or num <= 0.0:
        raise DegenerateDenominator(den, c, m)


def _warn_if_inverted(beta_f: float, c: ControlSpec, m: MeasureSpec) -> None:
    if beta_f < 0.0:
        logger.warning("Population inversion: beta_f=%.6g at %s, %s", beta_f, c, m)


def beta_f_identical(
    beta_t: float,
    beta_i: float,
    c: ControlSpec,
    m: MeasureSpec,
    *,
    denom_min: float = DENOM_MIN,
) -> float:
    """Effective ``β_f·Δ`` for two identical baths at ``beta_t``.

    Raises:
        DegenerateDenominator: postselection is impossible at these angles.
    """
    x = math.exp(-beta_t)
    xi = math.exp(-beta_i)
    base = (1.0 + xi) * (1.0 + x) * (1.0 + c.r * math.cos(m.Theta) * math.cos(c.theta))
    coh = c.r * math.sin(m.Theta) * math.sin(c.theta) * math.cos(m.Phi - c.phi)
    num = base + math.exp(-(beta_i + beta_t)) * coh
    den = base + coh
    _check_terms(num, den, c, m, denom_min)
    beta_f = beta_t - float(log_ratio(num, den))
    _warn_if_inverted(beta_f, c, m)
    return beta_f


def beta_f_general(
    b: BathConfig,
    c: ControlSpec,
    m: MeasureSpec,
    *,
    denom_min: float = DENOM_MIN,
) -> float:
    """Effective ``β_f·Δ`` for baths ``β_T1`` (E_1) and ``β_T2`` (E_2).

    Raises:
        DegenerateDenominator: postselection is impossible at these angles.
    """
    terms = evaluate_grid(
        b.beta_t1, b.beta_t2, b.beta_i, c.r, c.theta, c.phi, m.Theta, m.Phi
    )
    num, den = float(terms.numerator), float(terms.denominator)
    _check_terms(num, den, c, m, denom_min)
    beta_f = -float(log_ratio(num, den))
    _warn_if_inverted(beta_f, c, m)
    return beta_f


def success_prob(beta_t: float, beta_i: float, c: ControlSpec, m: MeasureSpec) -> float:
    """Probability of the ``(Θ, Φ)`` outcome for identical baths."""
    gamma = gamma_coeff(beta_t, beta_i)
    return 0.5 * (
        1.0
        + c.r * math.cos(c.theta) * math.cos(m.Theta)
        + c.r * gamma * math.sin(c.theta) * math.sin(m.Theta) * math.cos(m.Phi - c.phi)
    )


def success_prob_general(b: BathConfig, c: ControlSpec, m: MeasureSpec) -> float:
    """Probability of the ``(Θ, Φ)`` outcome for arbitrary baths."""
    terms = evaluate_grid(
        b.beta_t1, b.beta_t2, b.beta_i, c.r, c.theta, c.phi, m.Theta, m.Phi
    )
    return float(terms.prob)


def success_prob_opt(beta_t: float, beta_i: float, theta: float) -> Tuple[float, float]:
    """Literal pure-control probabilities ``½ sin²θ (1 ± γ)`` of the two extremal branches."""
    gamma = gamma_coeff(beta_t, beta_i)
    s2 = math.sin(theta) ** 2
    return 0.5 * s2 * (1.0 + gamma), 0.5 * s2 * (1.0 - gamma)


def analytic_optima_identical(c: ControlSpec) -> StationaryPoints:
    """Stationary directions ``Θ = arccos(r cos(π-θ))`` with ``Φ = φ`` (max) / ``φ+π`` (min)."""
    Theta = math.acos(max(-1.0, min(1.0, c.r * math.cos(math.pi - c.theta))))
    return StationaryPoints(
        maximum=MeasureSpec(Theta, c.phi),
        minimum=MeasureSpec(Theta, c.phi + math.pi),
    )


def success_prob_at_optimum(beta_t: float, beta_i: float, c: ControlSpec) -> Tuple[float, float]:
    """General-probability formula evaluated at :func:`analytic_optima_identical`.

    Companion of :func:`success_prob_opt`; the two coincide for ``r = 1``.
    """
    points = analytic_optima_identical(c)
    return (
        success_prob(beta_t, beta_i, c, points.maximum),
        success_prob(beta_t, beta_i, c, points.minimum),
    )


def definite_order_beta(b: BathConfig, first: int = 1) -> float:
    """β of the fixed-order protocol: the bath applied last wins."""
    if first == 1:
        return b.beta_t2
    if first == 2:
        return b.beta_t1
    raise InvalidParameter(f"first must be 1 or 2, got {first}.")


def effective_temperature_report(
    b: BathConfig,
    c: ControlSpec,
    m: MeasureSpec,
    *,
    p_min: float = P_MIN,
    denom_min: float = DENOM_MIN,
) -> Dict[str, Any]:
    """Flat record of ``β_f``, success probability and cooling flag."""
    beta_f = beta_f_general(b, c, m, denom_min=denom_min)
    prob = success_prob_general(b, c, m)
    if prob <= p_min:
        raise DegenerateDenominator(prob, c, m)
    return {
        "beta_f": beta_f,
        "p_success": prob,
        "cooling": beta_f > b.beta_t1,
        "delta_beta": beta_f - b.beta_t1,
    }
