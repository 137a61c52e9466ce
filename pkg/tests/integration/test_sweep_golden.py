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

import io
from pathlib import Path

import numpy as np
import pytest

from qswitch_thermal.cli import main
from qswitch_thermal.output import read_sweep_csv

GOLDEN_DIR = Path(__file__).parent / "golden"


def brute_curve(n, path):
    argv = [
        "sweep", "--kind", "theta-curve", "--n", n, "--r", "1",
        "--theta-steps", "37", "--verify", "--output", str(path),
    ]
    assert main(argv, stdout=io.StringIO()) == 0
    return path


@pytest.mark.parametrize("n", ["0.5", "2"])
def test_theta_curve_matches_golden(n, tmp_path):
    golden = GOLDEN_DIR / f"theta_curve_n{n}.csv"
    assert golden.exists(), f"missing golden file {golden}"
    meta, expected = read_sweep_csv(golden)
    produced_meta, produced = read_sweep_csv(brute_curve(n, tmp_path / "curve.csv"))

    assert produced_meta["Theta_points"] == meta["Theta_points"]
    assert produced_meta["beta_t2"] == meta["beta_t2"]
    assert list(produced.columns) == list(expected.columns)
    np.testing.assert_allclose(produced["theta"], expected["theta"], rtol=0, atol=1e-15)
    # same grid cell on the 0.0005 rad scan
    np.testing.assert_array_equal(produced["Theta_opt"], expected["Theta_opt"])
    np.testing.assert_allclose(produced["beta_f"], expected["beta_f"], rtol=0, atol=1e-12)
    assert not produced["excluded"].any()


@pytest.mark.parametrize("n", ["0.5", "2"])
def test_theta_curve_regenerates_bit_identically(n, tmp_path):
    first = brute_curve(n, tmp_path / "first.csv").read_bytes()
    second = brute_curve(n, tmp_path / "second.csv").read_bytes()
    assert first == second


def test_asymmetric_curves_leave_the_symmetric_line():
    for n in ("0.5", "2"):
        _, curve = read_sweep_csv(GOLDEN_DIR / f"theta_curve_n{n}.csv")
        assert np.max(np.abs(curve["Theta_opt"] - (np.pi - curve["theta"]))) > 0.1
