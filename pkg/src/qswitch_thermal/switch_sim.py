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
"""Brute-force simulation of the two-channel quantum SWITCH.

This module is the reference oracle: it builds the 16 SWITCH Kraus operators,
evolves ``ρ_c ⊗ ρ_i`` and postselects the control on a Bloch direction. The
closed-form evaluators in :mod:`qswitch_thermal.closed_form` are tested
against it.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import qmat, thermal
from .exceptions import InvalidParameter, ZeroProbabilityPostselection
from .qmat import CMat2, CMat4, DensityMatrix2, JointState4
from .thermal import BathConfig, KrausChannel, ThermalParams

logger = logging.getLogger(__name__)

P_MIN = 1e-12

TWO_PI = 2.0 * math.pi


def normalize_angles(polar: float, azimuth: float) -> tuple[float, float]:
    """Map any (polar, azimuth) pair onto ``[0, π] × [0, 2π)``."""
    polar = math.fmod(float(polar), TWO_PI)
    if polar < 0.0:
        polar += TWO_PI
    azimuth = float(azimuth)
    if polar > math.pi:
        polar = TWO_PI - polar
        azimuth += math.pi
    azimuth = math.fmod(azimuth, TWO_PI)
    if azimuth < 0.0:
        azimuth += TWO_PI
    # fmod of a tiny negative value can round back up to 2π
    if azimuth >= TWO_PI:
        azimuth = 0.0
    return polar, azimuth


@dataclass(frozen=True)
class ControlSpec:
    """Bloch parametrization ``(r, θ, φ)`` of the control qubit."""

    r: float
    theta: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        r = float(self.r)
        if not 0.0 <= r <= 1.0:
            raise InvalidParameter(f"Bloch radius r must lie in [0, 1], got {r}.")
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise InvalidParameter(f"Control angles must be finite, got ({self.theta}, {self.phi}).")
        theta, phi = normalize_angles(self.theta, self.phi)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @property
    def bloch_vector(self) -> tuple[float, float, float]:
        s = math.sin(self.theta)
        return (
            self.r * s * math.cos(self.phi),
            self.r * s * math.sin(self.phi),
            self.r * math.cos(self.theta),
        )


@dataclass(frozen=True)
class MeasureSpec:
    """Postselection direction ``(Θ, Φ)`` on the control Bloch sphere."""

    Theta: float
    Phi: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.Theta) and math.isfinite(self.Phi)):
            raise InvalidParameter(
                f"Measurement angles must be finite, got ({self.Theta}, {self.Phi})."
            )
        Theta, Phi = normalize_angles(self.Theta, self.Phi)
        object.__setattr__(self, "Theta", Theta)
        object.__setattr__(self, "Phi", Phi)

    def antipodal(self) -> MeasureSpec:
        """The other outcome of the same measurement, ``(π-Θ, Φ+π)``."""
        return MeasureSpec(math.pi - self.Theta, self.Phi + math.pi)

    def ket(self) -> np.ndarray:
        """``cos(Θ/2)|0⟩ + e^{iΦ} sin(Θ/2)|1⟩``."""
        return np.array(
            [math.cos(self.Theta / 2.0), np.exp(1j * self.Phi) * math.sin(self.Theta / 2.0)],
            dtype=np.complex128,
        )


@dataclass(frozen=True)
class PostselectResult:
    """Conditional system state after postselecting the control.

    Attributes:
        rho_f (DensityMatrix2): Normalized conditional system state.
        prob (float): Success probability of the postselected outcome.
        beta_f (float): Effective ``β_f·Δ`` of ``rho_f``.
        max_offdiag (float): Largest coherence of the unnormalized block.
    """

    rho_f: DensityMatrix2
    prob: float
    beta_f: float
    max_offdiag: float


def control_state(c: ControlSpec) -> DensityMatrix2:
    nx, ny, nz = c.bloch_vector
    rho = 0.5 * (qmat.IDENTITY_2 + nx * qmat.SIGMA_X + ny * qmat.SIGMA_Y + nz * qmat.SIGMA_Z)
    return qmat.validate_density(rho)


def switch_kraus(e1: KrausChannel, e2: KrausChannel) -> tuple[CMat4, ...]:
    """SWITCH Kraus operators ``M_ij``, flattened as ``ops[4*i + j]``.

    ``i`` indexes the Kraus operators of ``e2`` and ``j`` those of ``e1``:
    ``M_ij = |0⟩⟨0| ⊗ K2_i K1_j + |1⟩⟨1| ⊗ K1_j K2_i``. Control ``|0⟩``
    applies E_1 first.
    """
    ops = []
    for k2 in e2.kraus_ops:
        for k1 in e1.kraus_ops:
            m = qmat.kron(qmat.PROJ_0, k2 @ k1) + qmat.kron(qmat.PROJ_1, k1 @ k2)
            ops.append(qmat.as_cmat(m, dim=4))
    return tuple(ops)


def apply_switch(
    c: ControlSpec,
    rho_i: DensityMatrix2,
    e1: KrausChannel,
    e2: KrausChannel,
) -> JointState4:
    """Joint control⊗system state ``Σ M_ij (ρ_c⊗ρ_i) M_ij†``."""
    initial = qmat.kron(control_state(c).matrix, rho_i.matrix)
    ops = np.stack(switch_kraus(e1, e2))
    joint = np.einsum("kab,bc,kdc->ad", ops, initial, ops.conj())
    return qmat.validate_joint(joint)


def conditional_state(joint: JointState4, m: MeasureSpec) -> tuple[CMat2, float]:
    """Unnormalized system block ``⟨ψ_m| S |ψ_m⟩`` and its trace."""
    psi = m.ket()
    blocks = joint.matrix.reshape(2, 2, 2, 2)
    block = np.einsum("c,csdt,d->st", psi.conj(), blocks, psi)
    return qmat.as_cmat(block), float(np.real(np.trace(block)))


def postselect(joint: JointState4, m: MeasureSpec, *, p_min: float = P_MIN) -> PostselectResult:
    """Project the control onto ``m`` and normalize the system block.

    Raises:
        ZeroProbabilityPostselection: the outcome probability is below ``p_min``.
    """
    block, prob = conditional_state(joint, m)
    if prob < p_min:
        raise ZeroProbabilityPostselection(prob, m, p_min)
    offdiag = qmat.max_offdiag(block)
    # Hermitian part; rounding asymmetry scales as 1/prob
    rho_f = qmat.validate_density(0.5 * (block + qmat.adjoint(block)) / prob)
    beta_f = thermal.beta_from_state(rho_f)
    if beta_f < 0.0:
        logger.warning("Population inversion: beta_f=%.6g for %s", beta_f, m)
    return PostselectResult(rho_f=rho_f, prob=prob, beta_f=beta_f, max_offdiag=offdiag)


def oracle_beta_f(
    baths: BathConfig,
    c: ControlSpec,
    m: MeasureSpec,
    *,
    p_min: float = P_MIN,
) -> PostselectResult:
    """Full simulation from a thermal initial state at ``baths.beta_i``."""
    e1 = thermal.thermal_kraus(ThermalParams(baths.beta_t1))
    e2 = thermal.thermal_kraus(ThermalParams(baths.beta_t2))
    rho_i = thermal.thermal_state(ThermalParams(baths.beta_i))
    joint = apply_switch(c, rho_i, e1, e2)
    logger.debug("Simulated SWITCH for %s, %s, %s", baths, c, m)
    return postselect(joint, m, p_min=p_min)
