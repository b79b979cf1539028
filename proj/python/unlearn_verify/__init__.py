# Copyright 2026 The Unlearn-Verify Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Probabilistic verification of machine unlearning via backdoors.

Thin Python surface over the C++ core: exact binomial hypothesis testing
(`deletion_confidence`, `decide`, `samples_needed`), Bayesian rate
estimation (`posterior`, `expected_confidence`), collaborative
verification (`pooled_test`, `false_negative_probability`), trigger
capacity (`awd`, `collision_probability`, `max_users`), and the
Bernoulli-level deployment simulator (`end_to_end`).
"""

from unlearn_verify._core import *  # noqa: F401,F403
from unlearn_verify._core import __version__  # noqa: F401
