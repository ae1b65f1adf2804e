# Copyright 2026 The psdrank Authors
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

"""Python bindings for the psdrank C++ library."""

from ._core import (
    Factorization,
    PreconditionError,
    b3_value,
    block_zero_bound,
    bound,
    disj_factorization,
    example_ids,
    generate,
    hadamard_root_factorization,
    ip_protocol,
    ip_sign_matrix,
    mc_factorization,
    ne_factorization,
    not_full_factorization,
    phase_balance,
    realify,
    reproduce,
    tensor_factorization,
    verify,
)

__all__ = [
    "Factorization",
    "PreconditionError",
    "b3_value",
    "block_zero_bound",
    "bound",
    "disj_factorization",
    "example_ids",
    "generate",
    "hadamard_root_factorization",
    "ip_protocol",
    "ip_sign_matrix",
    "mc_factorization",
    "ne_factorization",
    "not_full_factorization",
    "phase_balance",
    "realify",
    "reproduce",
    "tensor_factorization",
    "verify",
]
