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
"""Dense 2×2 / 4×4 complex matrices and density-matrix validation.

Matrices are read-only ``numpy`` arrays of dtype ``complex128``. The tensor
product convention is fixed throughout the package: the control qubit is the
first factor and the system the second, so ``kron(control_op, system_op)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
import numpy.typing as npt
from scipy.linalg import eigvalsh

from .exceptions import (
    InvalidParameter,
    NegativeDiagonal,
    NonDiagonalInput,
    NotHermitian,
    NotPSD,
    TraceNotOne,
)

CMat2 = npt.NDArray[np.complex128]
CMat4 = npt.NDArray[np.complex128]
CMat = Union[CMat2, CMat4]

TOL_HERM = 1e-12
TOL_TRACE = 1e-12
TOL_PSD = 1e-12
TOL_DIAG = 1e-14
TOL_PSD_JOINT = 1e-10


def as_cmat(a: npt.ArrayLike, dim: int = 2) -> npt.NDArray[np.complex128]:
    """Copy ``a`` into a read-only complex matrix of shape ``(dim, dim)``."""
    out = np.array(a, dtype=np.complex128)
    if out.shape != (dim, dim):
        raise InvalidParameter(f"Expected a {dim}x{dim} matrix, got shape {out.shape}.")
    out.setflags(write=False)
    return out


IDENTITY_2 = as_cmat(np.eye(2))
IDENTITY_4 = as_cmat(np.eye(4), dim=4)
SIGMA_X = as_cmat([[0, 1], [1, 0]])
SIGMA_Y = as_cmat([[0, -1j], [1j, 0]])
SIGMA_Z = as_cmat([[1, 0], [0, -1]])
PROJ_0 = as_cmat([[1, 0], [0, 0]])
PROJ_1 = as_cmat([[0, 0], [0, 1]])


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


def multiply(a: CMat, b: CMat) -> CMat:
    return _frozen(a @ b)


def adjoint(a: CMat) -> CMat:
    return _frozen(np.conj(a).T)


def kron(a: CMat2, b: CMat2) -> CMat4:
    """Tensor product with ``a`` as the control (first) factor."""
    return _frozen(np.kron(a, b))


def trace(a: CMat) -> complex:
    return complex(np.trace(a))


def hermitian_violation(a: CMat) -> float:
    return float(np.max(np.abs(a - np.conj(a).T)))


def max_offdiag(a: CMat) -> float:
    return float(np.max(np.abs(a - np.diag(np.diag(a)))))


def diag_sqrt(a: CMat2, *, tol: float = TOL_DIAG) -> CMat2:
    """Elementwise square root of a nonnegative diagonal matrix.

    Raises:
        NonDiagonalInput: an off-diagonal entry exceeds ``tol``.
        NegativeDiagonal: a diagonal entry is below ``-tol``.
    """
    offdiag = max_offdiag(a)
    if offdiag > tol:
        raise NonDiagonalInput(f"diag_sqrt needs a diagonal matrix; off-diagonal {offdiag:.3e}.")
    d = np.real(np.diag(a))
    if np.any(d < -tol):
        raise NegativeDiagonal(f"diag_sqrt got negative diagonal entries {d.tolist()}.")
    return _frozen(np.diag(np.sqrt(np.clip(d, 0.0, None))))


def eigvals_hermitian_2x2(a: CMat2) -> tuple[float, float]:
    """Closed-form eigenvalues (ascending) of the Hermitian part of ``a``."""
    p = float(np.real(a[0, 0]))
    q = float(np.real(a[1, 1]))
    b = 0.5 * (a[0, 1] + np.conj(a[1, 0]))
    mean = 0.5 * (p + q)
    radius = float(np.hypot(0.5 * (p - q), abs(b)))
    return mean - radius, mean + radius


@dataclass(frozen=True)
class DensityMatrix2:
    """A validated qubit state; construct through :func:`validate_density`."""

    matrix: CMat2

    @property
    def populations(self) -> tuple[float, float]:
        return float(self.matrix[0, 0].real), float(self.matrix[1, 1].real)


@dataclass(frozen=True)
class JointState4:
    """A validated control⊗system state; construct through :func:`validate_joint`."""

    matrix: CMat4


def validate_density(
    a: npt.ArrayLike,
    *,
    tol_herm: float = TOL_HERM,
    tol_trace: float = TOL_TRACE,
    tol_psd: float = TOL_PSD,
) -> DensityMatrix2:
    """Check that ``a`` is a qubit density matrix and wrap it.

    Args:
        a: 2×2 complex matrix.
        tol_herm (float): Allowed max ``|a_ij - conj(a_ji)|``.
        tol_trace (float): Allowed ``|tr a - 1|``.
        tol_psd (float): Allowed negative eigenvalue magnitude.

    Returns:
        (DensityMatrix2): The validated, read-only state.

    Raises:
        NotHermitian, TraceNotOne, NotPSD: with the violation magnitude attached.
    """
    m = as_cmat(a)
    herm = hermitian_violation(m)
    if herm > tol_herm:
        raise NotHermitian(f"Matrix is not Hermitian (violation {herm:.3e}).", herm)
    tr_err = abs(trace(m) - 1.0)
    if tr_err > tol_trace:
        raise TraceNotOne(f"Trace differs from 1 by {tr_err:.3e}.", tr_err)
    low, _ = eigvals_hermitian_2x2(m)
    if low < -tol_psd:
        raise NotPSD(f"Matrix has negative eigenvalue {low:.3e}.", -low)
    return DensityMatrix2(m)


def validate_joint(
    a: npt.ArrayLike,
    *,
    tol_herm: float = TOL_HERM,
    tol_trace: float = TOL_TRACE,
    tol_psd: float = TOL_PSD_JOINT,
) -> JointState4:
    """4×4 counterpart of :func:`validate_density` (looser PSD floor)."""
    m = as_cmat(a, dim=4)
    herm = hermitian_violation(m)
    if herm > tol_herm:
        raise NotHermitian(f"Joint state is not Hermitian (violation {herm:.3e}).", herm)
    tr_err = abs(trace(m) - 1.0)
    if tr_err > tol_trace:
        raise TraceNotOne(f"Joint state trace differs from 1 by {tr_err:.3e}.", tr_err)
    low = float(eigvalsh(0.5 * (m + np.conj(m).T))[0])
    if low < -tol_psd:
        raise NotPSD(f"Joint state has negative eigenvalue {low:.3e}.", -low)
    return JointState4(m)
