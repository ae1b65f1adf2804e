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

import math

import numpy as np
import pytest

import psdrank


def test_generate_and_bounds():
    a = psdrank.generate("hexagon_slack")
    assert a.shape == (6, 6)
    assert psdrank.bound("b1", a)["value"] == pytest.approx(math.sqrt(3), abs=1e-9)
    assert psdrank.bound("b4", a)["value"] == pytest.approx(2.0)
    b3 = psdrank.bound("b3", a, restarts=2)
    assert b3["value"] > 2.1
    assert psdrank.b3_value(a, b3["certificate"]["q"]) == pytest.approx(b3["value"], abs=1e-9)


def test_rescaled_bound_dominates():
    a = psdrank.generate("ex4.4")
    plain = psdrank.bound("b4", a)["value"]
    rescaled = psdrank.bound("b4'", a, restarts=2)
    assert rescaled["value"] >= plain
    assert len(rescaled["certificate"]["d"]) == 10


def test_nonequality_factorization():
    f = psdrank.ne_factorization(3)
    assert f.size == 3
    target = psdrank.generate("derangement", n=9)
    assert psdrank.verify(f, target)["max_abs_error"] < 1e-12
    real = psdrank.realify(f)
    assert real.size == 6 and real.field == "real"
    assert np.allclose(real.realized(), target, atol=1e-12)


def test_not_full_precondition():
    good = psdrank.not_full_factorization(psdrank.generate("tensor_pair", a=0.5))
    assert good.size <= 3
    with pytest.raises(psdrank.PreconditionError):
        psdrank.not_full_factorization(psdrank.generate("tensor_pair", a=0.1))


def test_ip_protocol_and_sign_matrix():
    m = psdrank.ip_sign_matrix(4, 2)
    assert np.array_equal(m * m, psdrank.generate("inner_product", n=4))
    out = psdrank.ip_protocol(2, "10", "10")
    assert out["expectation"] == pytest.approx(1.0)
    assert sum(out["outcome_probs"]) == pytest.approx(1.0)


def test_disjointness_is_pinned():
    f = psdrank.disj_factorization(3)
    assert f.size == 8
    assert psdrank.block_zero_bound(psdrank.generate("disjointness", n=3), 4, 4) >= 8


def test_phase_balance_and_reproduce():
    thetas = psdrank.phase_balance([3.0, 4.0, 5.0])
    total = sum(v * complex(math.cos(t), math.sin(t)) for v, t in zip([3, 4, 5], thetas))
    assert abs(total) < 1e-10
    assert all(row["pass"] for row in psdrank.reproduce("ex5.4"))
    with pytest.raises(ValueError):
        psdrank.generate("no_such_family")
