# Copyright 2026 The ldpmarl Authors.
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
"""Smoke tests for the Python module."""

import math
import os

import pytest

import ldpmarl


def test_version():
    assert ldpmarl.__version__.startswith("ldpmarl ")


def test_resolve_config_defaults_and_overrides():
    cfg = ldpmarl.resolve_config({"env.scale": "small", "campaign.seeds": [4, 2]})
    assert cfg["env.height"] == "5"
    assert cfg["campaign.seeds"] == "4,2"
    assert cfg["campaign.episodes"] == "3000"


def test_unknown_key_is_value_error():
    with pytest.raises(ValueError):
        ldpmarl.resolve_config({"env.colour": "red"})
    with pytest.raises(ldpmarl.ConfigError):
        ldpmarl.resolve_config({"campaign.ratios": ""})


def test_solver_plug_back():
    b = 1.15
    for gamma in (0.5, 1.0, 2.0, 5.0, 12.0):
        c = ldpmarl.solve_multiplier(gamma, b)
        lhs = 2 * b * b / (c * c - b * b) + math.log(1 - b * b / (c * c))
        assert abs(lhs - gamma) < 1e-10
    with pytest.raises(ValueError):
        ldpmarl.solve_multiplier(0.0, b)


def test_attack_mean_example():
    assert ldpmarl.attack_mean(1.0, 2.0, 1.0) == pytest.approx(7.0 / 3.0)
    p = ldpmarl.profile(3.0)
    assert p["c"] > p["b"] > 0
    assert p["mu_star"] > 0


def test_bounded_laplace_stays_in_bounds():
    xs = ldpmarl.bounded_laplace(9.5, n=20000, seed=3)
    assert min(xs) >= -1.5 and max(xs) <= 10.0
    assert xs == ldpmarl.bounded_laplace(9.5, n=20000, seed=3)


def test_shifted_noise_mean():
    p = ldpmarl.profile(2.0)
    xs = ldpmarl.adversarial_noise(2.0, n=200000, seed=5)
    assert sum(xs) / len(xs) == pytest.approx(p["mu_star"], abs=0.05)


def test_simulation_runs_and_is_deterministic():
    a = ldpmarl.Simulation({"env.scale": "small"}, seed=7)
    b = ldpmarl.Simulation({"env.scale": "small"}, seed=7)
    ra, rb = a.run(20), b.run(20)
    assert [e["steps"] for e in ra] == [e["steps"] for e in rb]
    assert a.episodes_played == 20
    assert len(a.q_values(0)) == 25 and len(a.q_values(0)[0]) == 5
    assert all(1 <= e["steps"] <= 1000 for e in ra)


def test_attackers_selected():
    assert ldpmarl.Simulation({"env.scale": "medium"}, seed=1).attackers == []
    sim = ldpmarl.Simulation({"env.scale": "medium"}, seed=1, ratio=0.4)
    assert len(sim.attackers) == 4
    episodes = sim.run(5)
    assert sum(e["malicious"] for e in episodes) > 0
    with pytest.raises(ValueError):
        ldpmarl.Simulation({"env.scale": "medium"}, seed=1, ratio=2.0)


def test_calibration_direction():
    unit = ldpmarl.calibrate(kappa=1.0, gamma=1.0, reps=100)
    assert unit["outliers_dp_tau"] > unit["outliers_nodp"] == 0.0
    k = ldpmarl.bounded_noise_kappa(1.0)
    assert k == pytest.approx(11.5)
    low = ldpmarl.calibrate(kappa=k, gamma=1.0, reps=100)
    high = ldpmarl.calibrate(kappa=k, gamma=6.0, reps=100)
    assert low["outliers_attack"] == 0.0
    assert high["rmse"] > low["rmse"]


def test_campaign_writes_outputs(tmp_path):
    out = tmp_path / "camp"
    result = ldpmarl.run_campaign(
        {
            "env.scale": "small",
            "campaign.episodes": 15,
            "campaign.seeds": [1],
            "campaign.ratios": [0, 0.4],
        },
        out_dir=str(out),
    )
    assert result["failures"] == 0
    assert len(result["arms"]) == 2
    assert os.path.exists(out / "manifest")
    assert os.path.exists(out / "summary" / "ratio_0.4.csv")
    assert len(result["arms"][1]["attackers"]) == 2


def test_module_location_matches_stage():
    stage = os.environ.get("LDPMARL_STAGE_DIR")
    if stage:
        assert ldpmarl.__file__.startswith(stage)
