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
"""Exception hierarchy shared by every qswitch_thermal module."""

from __future__ import annotations

from typing import Any, Optional


class QSwitchError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(QSwitchError, ValueError):
    """A value violates the invariant of the type it was passed to."""


class DensityMatrixError(QSwitchError, ValueError):
    """A matrix failed density-matrix validation.

    Args:
        message (str): Human readable description.
        violation (float): Largest observed violation of the checked property.
    """

    def __init__(self, message: str, violation: float) -> None:
        super().__init__(message)
        self.violation = violation


class NotHermitian(DensityMatrixError):
    pass


class TraceNotOne(DensityMatrixError):
    pass


class NotPSD(DensityMatrixError):
    pass


class NonDiagonalInput(QSwitchError, ValueError):
    """diag_sqrt received a matrix with off-diagonal weight."""


class NegativeDiagonal(QSwitchError, ValueError):
    """diag_sqrt received a negative diagonal entry."""


class NonDiagonalState(QSwitchError, ValueError):
    """An effective temperature was requested for a state with coherences."""


class DegeneratePopulation(QSwitchError, ValueError):
    """A population vanished, so the effective temperature is unbounded."""


class PhysicalDegeneracy(QSwitchError):
    """Parameters are valid but the requested physical quantity is undefined."""


class ZeroProbabilityPostselection(PhysicalDegeneracy):
    """The postselected control outcome (almost) never occurs.

    Args:
        prob (float): The computed success probability.
        measure (Any): The measurement direction that was requested.
    """

    def __init__(self, prob: float, measure: Any, p_min: float) -> None:
        super().__init__(
            f"Postselection probability {prob:.3e} is below p_min={p_min:.1e} "
            f"for measurement direction {measure}."
        )
        self.prob = prob
        self.measure = measure


class DegenerateDenominator(PhysicalDegeneracy):
    """The closed-form effective temperature has a vanishing denominator."""

    def __init__(
        self,
        denominator: float,
        control: Optional[Any] = None,
        measure: Optional[Any] = None,
    ) -> None:
        super().__init__(
            f"Denominator {denominator:.3e} is degenerate at control={control}, "
            f"measure={measure}; postselection is impossible at these angles."
        )
        self.denominator = denominator
        self.control = control
        self.measure = measure


class NoFeasiblePoint(PhysicalDegeneracy):
    """Every candidate measurement direction was excluded by the probability floor."""
