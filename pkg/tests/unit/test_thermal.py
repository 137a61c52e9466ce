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

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qswitch_thermal import qmat
from qswitch_thermal.exceptions import (
    DegeneratePopulation,
    InvalidParameter,
    NonDiagonalState,
)
from qswitch_thermal.thermal import (
    BathConfig,
    KrausChannel,
    ThermalParams,
    apply_channel,
    beta_from_state,
    check_cptp,
    thermal_kraus,
    thermal_populations,
    thermal_state,
)

betas = st.floats(min_value=0.0, max_value=30.0)
unit = st.floats(min_value=0.0, max_value=1.0)


def bloch_state(r: float, theta: float, phi: float) -> qmat.DensityMatrix2:
    nx = r * math.sin(theta) * math.cos(phi)
    ny = r * math.sin(theta) * math.sin(phi)
    nz = r * math.cos(theta)
    return qmat.validate_density(
        0.5 * (qmat.IDENTITY_2 + nx * qmat.SIGMA_X + ny * qmat.SIGMA_Y + nz * qmat.SIGMA_Z)
    )


def test_thermal_populations():
    ground, excited = thermal_populations(0.0)
    assert ground == excited == 0.5
    ground, excited = thermal_populations(800.0)
    assert ground == 1.0
    assert 0.0 <= excited < 1e-300


def test_thermal_state_ratio():
    rho = thermal_state(ThermalParams(1.3))
    ground, excited = rho.populations
    assert ground + excited == pytest.approx(1.0, abs=1e-15)
    assert excited / ground == pytest.approx(math.exp(-1.3), rel=1e-14)
    assert beta_from_state(rho) == pytest.approx(1.3, abs=1e-12)


@pytest.mark.parametrize("value", [-0.1, math.nan, math.inf])
def test_thermal_params_rejects(value):
    with pytest.raises(InvalidParameter):
        ThermalParams(value)


def test_beta_from_state_failures():
    with pytest.raises(NonDiagonalState):
        beta_from_state(qmat.validate_density([[0.5, 0.1], [0.1, 0.5]]))
    with pytest.raises(DegeneratePopulation):
        beta_from_state(qmat.validate_density(np.diag([1.0, 0.0])))


def test_beta_from_state_allows_inversion():
    assert beta_from_state(qmat.validate_density(np.diag([0.3, 0.7]))) < 0.0


@pytest.mark.parametrize("beta", [0.0, 0.5, 1.0, 10.0, 40.0])
def test_thermal_kraus_is_cptp(beta):
    channel = thermal_kraus(ThermalParams(beta))
    assert len(channel.kraus_ops) == 4
    assert check_cptp(channel) < 1e-12


@settings(deadline=None, max_examples=200)
@given(betas, unit, st.floats(min_value=0.0, max_value=math.pi), st.floats(0.0, 2 * math.pi))
def test_thermal_channel_outputs_thermal_state(beta, r, theta, phi):
    out = apply_channel(thermal_kraus(ThermalParams(beta)), bloch_state(r, theta, phi))
    expected = thermal_state(ThermalParams(beta)).matrix
    assert np.max(np.abs(out.matrix - expected)) < 1e-12


def test_kraus_channel_needs_four_operators():
    with pytest.raises(InvalidParameter):
        KrausChannel((qmat.IDENTITY_2,) * 3)
    padded = KrausChannel.from_operators([qmat.IDENTITY_2])
    assert len(padded.kraus_ops) == 4
    assert np.count_nonzero(padded.stacked()[1:]) == 0
    with pytest.raises(InvalidParameter):
        KrausChannel.from_operators([qmat.IDENTITY_2] * 5)


def test_identity_channel():
    rho = bloch_state(0.8, 1.0, 2.0)
    out = apply_channel(KrausChannel.identity(), rho)
    assert np.array_equal(out.matrix, rho.matrix)
    assert check_cptp(KrausChannel.identity()) == 0.0


def test_bath_config():
    b = BathConfig.from_asymmetry(1.5, 2.0, 0.5)
    assert b.beta_t2 == 3.0
    assert b.n == 2.0
    assert not b.is_identical
    assert BathConfig.identical(1.0, 2.0).is_identical
    with pytest.raises(InvalidParameter):
        BathConfig(-1.0, 1.0, 1.0)
    with pytest.raises(InvalidParameter):
        BathConfig.from_asymmetry(1.0, -2.0, 1.0)
    with pytest.raises(InvalidParameter):
        BathConfig(0.0, 1.0, 1.0).n
