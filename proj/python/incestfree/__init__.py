# Copyright 2026 The incestfree Authors
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

"""Incest-free social learning, expectation polling and revealed preferences."""

import json

from ._core import (
    IncestfreeError,
    InfoFlowGraph,
    LearningModel,
    afriat_solve,
    ar_fit,
    extreme_example,
    garp_check,
    minimal_extra_nodes,
    posterior_from_incestious,
    run_protocol1,
    run_protocol2,
)
from ._core import run_experiment as _run_experiment


def run_experiment(config):
    """Run a Monte Carlo experiment from a config dict; returns the report dict."""
    return json.loads(_run_experiment(json.dumps(config)))


__all__ = [
    "IncestfreeError",
    "InfoFlowGraph",
    "LearningModel",
    "afriat_solve",
    "ar_fit",
    "extreme_example",
    "garp_check",
    "minimal_extra_nodes",
    "posterior_from_incestious",
    "run_experiment",
    "run_protocol1",
    "run_protocol2",
]
