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

from .closed_form import (
    beta_f_general,
    beta_f_identical,
    effective_temperature_report,
    gamma_coeff,
    success_prob,
    success_prob_general,
)
from .exceptions import InvalidParameter, PhysicalDegeneracy, QSwitchError
from .optimize import ExtremaResult, SweepTable, find_extrema
from .switch_sim import ControlSpec, MeasureSpec, oracle_beta_f
from .thermal import BathConfig
from .version import __version__

__all__ = [
    "BathConfig",
    "ControlSpec",
    "ExtremaResult",
    "InvalidParameter",
    "MeasureSpec",
    "PhysicalDegeneracy",
    "QSwitchError",
    "SweepTable",
    "beta_f_general",
    "beta_f_identical",
    "effective_temperature_report",
    "find_extrema",
    "gamma_coeff",
    "oracle_beta_f",
    "success_prob",
    "success_prob_general",
    "__version__",
]
