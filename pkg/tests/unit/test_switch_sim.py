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

from qswitch_thermal import qmat
from qswitch_thermal.exceptions import InvalidParameter, ZeroProbabilityPostselection
from qswitch_thermal.switch_sim import (
    ControlSpec,
    MeasureSpec,
    apply_switch,
    conditional_state,
    control_state,
    normalize_angles,
    oracle_beta_f,
    postselect,
    switch_kraus,
)
from qswitch_thermal.thermal import BathConfig, ThermalParams, thermal_kraus, thermal_state

rng = np.random.default_rng(7)
half_pi = math.pi / 2


def random_setup():
    b = BathConfig(*rng.uniform(0.05, 5.0, size=3))
    c = ControlSpec(rng.uniform(0, 1), rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
    m = MeasureSpec(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
    return b, c, m


def simulate(b, c):
    e1 = thermal_kraus(ThermalParams(b.beta_t1))
    e2 = thermal_kraus(ThermalParams(b.beta_t2))
    rho_i = thermal_state(ThermalParams(b.beta_i))
    return apply_switch(c, rho_i, e1, e2)


def test_normalize_angles():
    assert normalize_angles(-0.5, 0.0) == pytest.approx((0.5, math.pi))
    assert normalize_angles(2 * math.pi + 0.3, 0.1) == pytest.approx((0.3, 0.1))
    assert normalize_angles(1.0, 7.0) == pytest.approx((1.0, 7.0 - 2 * math.pi))
    assert normalize_angles(1.0, -1e-300)[1] < 2 * math.pi


def test_control_spec_validation():
    with pytest.raises(InvalidParameter):
        ControlSpec(1.5, 0.0)
    with pytest.raises(InvalidParameter):
        ControlSpec(0.5, math.nan)
    c = ControlSpec(1.0, 4.0, 0.0)
    assert c.theta == pytest.approx(2 * math.pi - 4.0)
    assert c.phi == pytest.approx(math.pi)


def test_measure_spec_antipodal_ket_is_orthogonal():
    m = MeasureSpec(1.1, 0.4)
    flipped = m.antipodal()
    assert flipped.Theta == pytest.approx(math.pi - 1.1)
    assert flipped.Phi == pytest.approx(0.4 + math.pi)
    assert abs(np.vdot(m.ket(), flipped.ket())) < 1e-15


def test_control_state_purity():
    rho = control_state(ControlSpec(1.0, 0.7, 1.9)).matrix
    assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-14)
    rho = control_state(ControlSpec(0.0, 0.7, 1.9)).matrix
    assert np.allclose(rho, 0.5 * np.eye(2))


def test_switch_kraus_completeness():
    b, _, _ = random_setup()
    ops = switch_kraus(thermal_kraus(ThermalParams(b.beta_t1)), thermal_kraus(ThermalParams(b.beta_t2)))
    assert len(ops) == 16
    total = sum(op.conj().T @ op for op in ops)
    assert np.max(np.abs(total - np.eye(4))) < 1e-12


def test_joint_state_blocks():
    for _ in range(100):
        b, c, _ = random_setup()
        joint = simulate(b, c).matrix
        rho_c = control_state(c).matrix
        t1 = thermal_state(ThermalParams(b.beta_t1)).matrix
        t2 = thermal_state(ThermalParams(b.beta_t2)).matrix
        rho_i = thermal_state(ThermalParams(b.beta_i)).matrix
        assert np.max(np.abs(joint[:2, :2] - rho_c[0, 0] * t2)) < 1e-12
        assert np.max(np.abs(joint[2:, 2:] - rho_c[1, 1] * t1)) < 1e-12
        assert np.max(np.abs(joint[:2, 2:] - rho_c[0, 1] * (t2 @ rho_i @ t1))) < 1e-12
        assert np.max(np.abs(joint[2:, :2] - rho_c[1, 0] * (t1 @ rho_i @ t2))) < 1e-12


def test_conditional_state_is_diagonal_and_complementary():
    for _ in range(100):
        b, c, m = random_setup()
        joint = simulate(b, c)
        block, prob = conditional_state(joint, m)
        other, prob_other = conditional_state(joint, m.antipodal())
        assert qmat.max_offdiag(block) < 1e-12
        assert prob + prob_other == pytest.approx(1.0, abs=1e-12)
        assert np.max(np.abs(block + other - joint.matrix[:2, :2] - joint.matrix[2:, 2:])) < 1e-12


def test_postselect_worked_examples():
    c = ControlSpec(1.0, half_pi, 0.0)
    m = MeasureSpec(half_pi, 0.0)
    result = oracle_beta_f(BathConfig.identical(1.0, 1.0), c, m)
    assert result.beta_f == pytest.approx(1.3583, abs=5e-4)
    assert result.prob == pytest.approx(0.7051, abs=5e-4)
    assert result.max_offdiag < 1e-12
    result = oracle_beta_f(BathConfig.from_asymmetry(1.0, 2.0, 1.0), c, m)
    assert result.beta_f == pytest.approx(1.8404, abs=5e-4)


def test_postselect_heating_branch():
    result = oracle_beta_f(
        BathConfig.identical(1.0, 1.0), ControlSpec(1.0, half_pi), MeasureSpec(half_pi, math.pi)
    )
    assert result.beta_f < 1.0


def test_postselect_orthogonal_outcome():
    joint = simulate(BathConfig.identical(1.0, 1.0), ControlSpec(1.0, 0.0))
    with pytest.raises(ZeroProbabilityPostselection) as excinfo:
        postselect(joint, MeasureSpec(math.pi, 0.0))
    assert excinfo.value.prob < 1e-12
    assert excinfo.value.measure == MeasureSpec(math.pi, 0.0)


def test_maximally_mixed_control_is_ordinary_thermalization():
    b = BathConfig(0.7, 2.1, 1.3)
    result = oracle_beta_f(b, ControlSpec(0.0, 1.0), MeasureSpec(0.4, 2.0))
    assert result.prob == pytest.approx(0.5, abs=1e-12)
