// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Compressed sensing of sampled pulses: a seeded random projection
// y = S s_r and greedy recovery of the sparse coefficients through the
// effective system A = S D.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "chirpdict/dictionary.hpp"
#include "chirpdict/signal_model.hpp"

namespace chirpdict {

enum class SensingKind { gaussian, bernoulli };

std::string_view to_string(SensingKind kind);
std::optional<SensingKind> parse_sensing_kind(std::string_view name);

// M x N real matrix, Normal(0, 1/M) or +-1/sqrt(M) entries drawn row-major
// from mt19937_64(seed). Fully reproducible from (M, N, kind, seed).
class SensingOperator {
public:
    // Throws InvalidParameter unless 1 <= M <= N.
    SensingOperator(std::size_t measurements, std::size_t length, SensingKind kind,
                    std::uint64_t seed);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    SensingKind kind() const noexcept { return kind_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

    // S x and S^T y for complex vectors (real matrix applied to both parts).
    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
    Eigen::VectorXcd apply_transpose(const Eigen::VectorXcd& y) const;

private:
    std::size_t rows_;
    std::size_t cols_;
    SensingKind kind_;
    std::uint64_t seed_;
    Eigen::MatrixXd matrix_;
};

SensingOperator make_sensing(std::size_t measurements, std::size_t length, SensingKind kind,
                             std::uint64_t seed);

struct MeasurementDescriptor {
    std::uint64_t seed;
    SensingKind kind;
    std::size_t measurements; // M
    std::size_t length;       // N

    bool operator==(const MeasurementDescriptor&) const = default;
};

struct Measurements {
    std::vector<cdouble> y;
    MeasurementDescriptor provenance;
};

Measurements compress(const SensingOperator& sensing, const ComplexSignal& signal);

struct ReconstructionResult {
    SparseCoefficients alpha_hat;
    ComplexSignal signal_hat;
    std::vector<std::size_t> support; // selection order
    double residual_norm = 0.0;
    std::size_t iterations = 0;
    std::vector<double> residual_history; // ||r|| after each iteration, starting with ||y||
};

// Orthogonal matching pursuit over the columns of S*D. Stops once
// ||r|| <= res_tol*||y|| or the support reaches k_max. Ties in atom selection
// go to the lowest index. Throws InvalidParameter for k_max == 0 or
// k_max > M, DimensionMismatch when the operands disagree in size.
ReconstructionResult reconstruct_omp(const Measurements& y, const SensingOperator& sensing,
                                     const Dictionary& dict, std::size_t k_max, double res_tol);

} // namespace chirpdict
