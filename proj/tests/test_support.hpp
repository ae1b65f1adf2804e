// Copyright 2026 The psdrank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random instances shared by the test binaries.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "psdrank/factorization.hpp"
#include "psdrank/linalg.hpp"

namespace psdrank::testing {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double normal() { return std::normal_distribution<double>()(gen_); }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }

    CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols) {
        CMatrix m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i) {
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(normal(), normal());
        }
        return m;
    }

    RMatrix real_gaussian(Eigen::Index rows, Eigen::Index cols) {
        RMatrix m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i) {
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal();
        }
        return m;
    }

    /// Random PSD matrix G G^dagger of the given rank.
    CMatrix psd(Eigen::Index dim, Eigen::Index rank) {
        const CMatrix g = complex_gaussian(dim, rank);
        return g * g.adjoint();
    }

    DensityMatrix density(Eigen::Index dim) {
        const CMatrix p = psd(dim, integer(1, dim));
        return DensityMatrix(p / p.trace().real());
    }

    RVector distribution(Eigen::Index n) {
        RVector p(n);
        for (Eigen::Index k = 0; k < n; ++k) p(k) = -std::log1p(-uniform());
        return p / p.sum();
    }

    /// Entries in [0, 1), with some exact zeros sprinkled in.
    RMatrix nonnegative(Eigen::Index rows, Eigen::Index cols, double zero_prob = 0.0) {
        RMatrix m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i) {
            for (Eigen::Index j = 0; j < cols; ++j) {
                m(i, j) = uniform() < zero_prob ? 0.0 : uniform();
            }
        }
        return m;
    }

    /// Random complex factorization of size r with m x n target.
    PsdFactorization factorization(Eigen::Index m, Eigen::Index n, Eigen::Index r) {
        PsdFactorization f;
        f.size = static_cast<std::size_t>(r);
        f.field = Field::complex;
        for (Eigen::Index i = 0; i < m; ++i) f.e_factors.push_back(psd(r, integer(1, r)));
        for (Eigen::Index j = 0; j < n; ++j) f.f_factors.push_back(psd(r, integer(1, r)));
        return f;
    }

    std::mt19937_64& engine() { return gen_; }

  private:
    std::mt19937_64 gen_;
};

}  // namespace psdrank::testing
