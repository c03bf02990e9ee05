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
"""Cooperative multi-agent Q-learning with LDP advice and poisoning attacks."""

from ldpmarl._core import (
    ConfigError,
    NumericError,
    ParameterError,
    PreconditionError,
    ProtocolError,
    Simulation,
    __version__,
    adversarial_noise,
    attack_mean,
    bounded_laplace,
    bounded_noise_kappa,
    calibrate,
    profile,
    resolve_config,
    run_campaign,
    solve_multiplier,
)

__all__ = [
    "ConfigError",
    "NumericError",
    "ParameterError",
    "PreconditionError",
    "ProtocolError",
    "Simulation",
    "__version__",
    "adversarial_noise",
    "attack_mean",
    "bounded_laplace",
    "bounded_noise_kappa",
    "calibrate",
    "profile",
    "resolve_config",
    "run_campaign",
    "solve_multiplier",
]
