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

import pytest
from pydantic import ValidationError

from qswitch_thermal.config import RunConfig, build_run_config, load_config_file
from qswitch_thermal.exceptions import InvalidParameter

point_flags = {
    "command": "betaf",
    "beta_t1": 1.0,
    "n": 2.0,
    "beta_i": 1.0,
    "r": "1",
    "theta": 1.0,
    "Theta": 2.0,
}


def test_load_config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# reference settings\nbeta-t1 = 1.0\n\nbeta-i=1  # same as bath\nr=1,0.5\n")
    assert load_config_file(path) == {"beta-t1": "1.0", "beta-i": "1", "r": "1,0.5"}


def test_load_config_file_rejects_garbage(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("beta-t1 1.0\n")
    with pytest.raises(InvalidParameter):
        load_config_file(path)


def test_flags_override_file_values():
    cfg = build_run_config({"beta-t1": "3.0", "Phi": "1.5"}, {**point_flags, "beta_t1": 1.0})
    assert cfg.beta_t1 == 1.0
    assert cfg.Phi == 1.5
    assert cfg.bath.beta_t2 == 2.0


def test_degrees_are_converted_once():
    cfg = build_run_config({}, {**point_flags, "theta": 90.0, "Theta": 180.0, "degrees": True})
    assert cfg.theta == pytest.approx(math.pi / 2)
    assert cfg.Theta == pytest.approx(math.pi)
    assert cfg.degrees is False


def test_delta_scales_inverse_temperatures():
    cfg = build_run_config({}, {**point_flags, "delta": 2.0, "beta_t1": 0.5, "beta_i": 0.25})
    assert cfg.beta_t1 == 1.0
    assert cfg.beta_i == 0.5
    assert cfg.n == 2.0
    assert cfg.delta == 2.0


def test_r_list_parsing():
    cfg = build_run_config({"r": "1,0.5"}, {"command": "sweep", "kind": "extrema-vs-n"})
    assert cfg.r == (1.0, 0.5)
    assert cfg.beta_t1 == 1.0 and cfg.beta_i == 1.0


@pytest.mark.parametrize(
    "update",
    [
        {"beta_t2": 1.0},
        {"r": "1.5"},
        {"r": "1,0.5"},
        {"beta_t1": -1.0},
        {"Theta": None},
        {"unknown_key": 1},
        {"grid_theta": 1},
    ],
)
def test_invalid_values(update):
    with pytest.raises(ValidationError):
        build_run_config({}, {**point_flags, **update})


def test_sweep_needs_kind():
    with pytest.raises(ValidationError):
        build_run_config({}, {"command": "sweep", "n": 1.0, "r": "1"})


def test_sweep_defaults():
    cfg = RunConfig(command="sweep", kind="heatmap", n=1.0, r=1.0)
    assert (cfg.beta_t1, cfg.beta_i) == (1.0, 1.0)
    assert cfg.steps_theta == 181
    assert RunConfig(command="sweep", kind="extrema-vs-n", r=(1.0,)).steps_theta == 37


def test_domain_objects():
    cfg = build_run_config({}, point_flags)
    assert cfg.control.theta == 1.0
    assert cfg.measure.Theta == 2.0
    assert cfg.bath.n == 2.0


def test_run_config_is_frozen():
    cfg = build_run_config({}, point_flags)
    with pytest.raises(ValidationError):
        cfg.beta_t1 = 2.0
