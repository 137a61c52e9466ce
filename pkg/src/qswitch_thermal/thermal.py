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
"""Thermal qubit states and the thermalizing channel.

All inverse temperatures are dimensionless products ``β·Δ`` where ``Δ`` is the
qubit gap (``H = Δ|1⟩⟨1|``); ``Δ`` itself never appears at runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt
from scipy.special import expit

from . import qmat
from .exceptions import DegeneratePopulation, InvalidParameter, NonDiagonalState
from .qmat import CMat2, DensityMatrix2

TOL_DIAGONAL_STATE = 1e-10
MIN_POPULATION = 1e-300
TOL_CPTP = 1e-12

N_KRAUS = 4


def _check_beta(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0.0:
        raise InvalidParameter(f"{name} must be finite and >= 0, got {value}.")
    return value


@dataclass(frozen=True)
class ThermalParams:
    """Inverse temperature of a bath or state, as ``β·Δ``.

    ``beta_delta == 0`` is accepted as the maximally mixed boundary value.
    """

    beta_delta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta_delta", _check_beta("beta_delta", self.beta_delta))


@dataclass(frozen=True)
class BathConfig:
    """Bath pair and initial system temperature, all as ``β·Δ``.

    Args:
        beta_t1 (float): Inverse temperature of the first bath, E_1.
        beta_t2 (float): Inverse temperature of the second bath, E_2.
        beta_i (float): Inverse temperature of the initial system state.
    """

    beta_t1: float
    beta_t2: float
    beta_i: float

    def __post_init__(self) -> None:
        for name in ("beta_t1", "beta_t2", "beta_i"):
            object.__setattr__(self, name, _check_beta(name, getattr(self, name)))

    @classmethod
    def from_asymmetry(cls, beta_t1: float, n: float, beta_i: float) -> BathConfig:
        """Build ``β_T2 = n·β_T1``."""
        if not math.isfinite(n) or n < 0.0:
            raise InvalidParameter(f"Asymmetry ratio n must be finite and >= 0, got {n}.")
        return cls(beta_t1=beta_t1, beta_t2=n * beta_t1, beta_i=beta_i)

    @classmethod
    def identical(cls, beta_t: float, beta_i: float) -> BathConfig:
        return cls(beta_t1=beta_t, beta_t2=beta_t, beta_i=beta_i)

    @property
    def n(self) -> float:
        """Asymmetry ratio ``β_T2/β_T1``."""
        if self.beta_t1 == 0.0:
            raise InvalidParameter("Asymmetry ratio is undefined for beta_t1 == 0.")
        return self.beta_t2 / self.beta_t1

    @property
    def is_identical(self) -> bool:
        return self.beta_t1 == self.beta_t2


@dataclass(frozen=True)
class KrausChannel:
    """A qubit channel given by exactly four Kraus operators.

    Channels with fewer operators are padded with zero matrices, see
    :meth:`from_operators`.
    """

    kraus_ops: tuple[CMat2, ...]

    def __post_init__(self) -> None:
        if len(self.kraus_ops) != N_KRAUS:
            raise InvalidParameter(
                f"KrausChannel needs exactly {N_KRAUS} operators, got {len(self.kraus_ops)}."
            )
        object.__setattr__(self, "kraus_ops", tuple(qmat.as_cmat(k) for k in self.kraus_ops))

    @classmethod
    def from_operators(cls, ops: Sequence[npt.ArrayLike]) -> KrausChannel:
        if len(ops) > N_KRAUS:
            raise InvalidParameter(f"At most {N_KRAUS} Kraus operators are supported.")
        padded = list(ops) + [np.zeros((2, 2))] * (N_KRAUS - len(ops))
        return cls(tuple(qmat.as_cmat(k) for k in padded))

    @classmethod
    def identity(cls) -> KrausChannel:
        return cls.from_operators([qmat.IDENTITY_2])

    def stacked(self) -> npt.NDArray[np.complex128]:
        return np.stack(self.kraus_ops)


def thermal_populations(beta_delta: npt.ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    """Ground and excited populations ``1/(1+e^{-x})``, ``e^{-x}/(1+e^{-x})``."""
    x = np.asarray(beta_delta, dtype=float)
    return expit(x), expit(-x)


def thermal_state(p: ThermalParams) -> DensityMatrix2:
    ground, excited = thermal_populations(p.beta_delta)
    return qmat.validate_density(np.diag([ground, excited]))


def beta_from_state(
    rho: DensityMatrix2,
    *,
    tol_diag: float = TOL_DIAGONAL_STATE,
    min_population: float = MIN_POPULATION,
) -> float:
    """Effective ``β_f·Δ = -ln(ρ_11/ρ_00)`` of a diagonal qubit state.

    The result may be negative (population inversion).

    Raises:
        NonDiagonalState: off-diagonal magnitude exceeds ``tol_diag``.
        DegeneratePopulation: a population is at or below ``min_population``.
    """
    offdiag = qmat.max_offdiag(rho.matrix)
    if offdiag > tol_diag:
        raise NonDiagonalState(f"State has coherence {offdiag:.3e}; no effective temperature.")
    ground, excited = rho.populations
    if ground <= min_population or excited <= min_population:
        raise DegeneratePopulation(
            f"Populations ({ground:.3e}, {excited:.3e}) leave the effective temperature unbounded."
        )
    return math.log(ground) - math.log(excited)


def thermal_kraus(p: ThermalParams) -> KrausChannel:
    """Four-operator thermalizing channel ``K_k = A σ_k / √2`` with ``A = √ρ^(T)``.

    Operator order is fixed to (I, σ_x, σ_y, σ_z).
    """
    a = qmat.diag_sqrt(thermal_state(p).matrix)
    scale = 1.0 / math.sqrt(2.0)
    paulis = (qmat.IDENTITY_2, qmat.SIGMA_X, qmat.SIGMA_Y, qmat.SIGMA_Z)
    return KrausChannel(tuple(scale * (a @ s) for s in paulis))


def apply_channel(ch: KrausChannel, rho: DensityMatrix2) -> DensityMatrix2:
    ops = ch.stacked()
    out = np.einsum("kab,bc,kdc->ad", ops, rho.matrix, ops.conj())
    return qmat.validate_density(out)


def check_cptp(ch: KrausChannel) -> float:
    """Return ``max |Σ K†K - I|``."""
    ops = ch.stacked()
    total = np.einsum("kba,kbc->ac", ops.conj(), ops)
    return float(np.max(np.abs(total - qmat.IDENTITY_2)))
