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

#include "chirpdict/cs_codec.hpp"

#include <cmath>
#include <random>
#include <string>

#include "chirpdict/errors.hpp"

namespace chirpdict {

std::string_view to_string(SensingKind kind) {
    switch (kind) {
    case SensingKind::gaussian:
        return "gaussian";
    case SensingKind::bernoulli:
        return "bernoulli";
    }
    return "unknown";
}

std::optional<SensingKind> parse_sensing_kind(std::string_view name) {
    if (name == "gaussian") {
        return SensingKind::gaussian;
    }
    if (name == "bernoulli") {
        return SensingKind::bernoulli;
    }
    return std::nullopt;
}

SensingOperator::SensingOperator(std::size_t measurements, std::size_t length, SensingKind kind,
                                 std::uint64_t seed)
    : rows_(measurements), cols_(length), kind_(kind), seed_(seed) {
    if (measurements == 0 || measurements > length) {
        throw InvalidParameter("measurement count must satisfy 1 <= M <= N (M = " +
                               std::to_string(measurements) + ", N = " + std::to_string(length) +
                               ")");
    }
    const auto m = static_cast<Eigen::Index>(rows_);
    const auto n = static_cast<Eigen::Index>(cols_);
    matrix_.resize(m, n);
    std::mt19937_64 rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(rows_));
    if (kind == SensingKind::gaussian) {
        std::normal_distribution<double> gauss(0.0, scale);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                matrix_(i, j) = gauss(rng);
            }
        }
    } else {
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                matrix_(i, j) = (rng() >> 63) != 0 ? scale : -scale;
            }
        }
    }
}

Eigen::VectorXcd SensingOperator::apply(const Eigen::VectorXcd& x) const {
    if (static_cast<std::size_t>(x.size()) != cols_) {
        throw DimensionMismatch("sensing operator expects length " + std::to_string(cols_));
    }
    const Eigen::VectorXd re = matrix_ * x.real();
    const Eigen::VectorXd im = matrix_ * x.imag();
    Eigen::VectorXcd y(re.size());
    y.real() = re;
    y.imag() = im;
    return y;
}

Eigen::VectorXcd SensingOperator::apply_transpose(const Eigen::VectorXcd& y) const {
    if (static_cast<std::size_t>(y.size()) != rows_) {
        throw DimensionMismatch("sensing transpose expects length " + std::to_string(rows_));
    }
    const Eigen::VectorXd re = matrix_.transpose() * y.real();
    const Eigen::VectorXd im = matrix_.transpose() * y.imag();
    Eigen::VectorXcd x(re.size());
    x.real() = re;
    x.imag() = im;
    return x;
}

SensingOperator make_sensing(std::size_t measurements, std::size_t length, SensingKind kind,
                             std::uint64_t seed) {
    return {measurements, length, kind, seed};
}

Measurements compress(const SensingOperator& sensing, const ComplexSignal& signal) {
    if (signal.size() != sensing.cols()) {
        throw DimensionMismatch("signal length " + std::to_string(signal.size()) +
                                " != sensing operator width " + std::to_string(sensing.cols()));
    }
    const Eigen::Map<const Eigen::VectorXcd> x(signal.samples().data(),
                                               static_cast<Eigen::Index>(signal.size()));
    const Eigen::VectorXcd y = sensing.apply(x);
    return {{y.data(), y.data() + y.size()},
            {sensing.seed(), sensing.kind(), sensing.rows(), sensing.cols()}};
}

ReconstructionResult reconstruct_omp(const Measurements& meas, const SensingOperator& sensing,
                                     const Dictionary& dict, std::size_t k_max, double res_tol) {
    const std::size_t m = sensing.rows();
    const std::size_t n = sensing.cols();
    if (k_max == 0 || k_max > m) {
        throw InvalidParameter("k_max must satisfy 1 <= k_max <= M (k_max = " +
                               std::to_string(k_max) + ", M = " + std::to_string(m) + ")");
    }
    if (!(res_tol >= 0.0)) {
        throw InvalidParameter("residual tolerance must be >= 0");
    }
    if (meas.y.size() != m || dict.size() != n) {
        throw DimensionMismatch("measurements, sensing operator and dictionary disagree in size");
    }

    const auto mi = static_cast<Eigen::Index>(m);
    const Eigen::Map<const Eigen::VectorXcd> y(meas.y.data(), mi);
    const double stop = res_tol * y.norm();

    Eigen::VectorXcd residual = y;
    Eigen::MatrixXcd atoms(mi, 0);
    Eigen::VectorXcd coeffs;
    std::vector<char> chosen(n, 0);

    ReconstructionResult res{SparseCoefficients{}, ComplexSignal::zeros(dict.grid()), {}, y.norm(),
                             0, {y.norm()}};

    while (res.residual_norm > stop && res.support.size() < k_max) {
        // <A_k, r> for all k at once: D^H S^T r.
        const Eigen::VectorXcd back = sensing.apply_transpose(residual);
        const std::vector<cdouble> corr = dict.analyze({back.data(), n});
        std::size_t best = n;
        double best_mag = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (!chosen[k] && std::abs(corr[k]) > best_mag) {
                best_mag = std::abs(corr[k]);
                best = k;
            }
        }
        if (best == n) {
            break;
        }
        chosen[best] = 1;
        res.support.push_back(best);

        const std::vector<cdouble> col = dict.synthesize(SparseCoefficients::unit(n, best).alpha);
        const Eigen::VectorXcd atom =
            sensing.apply(Eigen::Map<const Eigen::VectorXcd>(col.data(), static_cast<Eigen::Index>(n)));
        atoms.conservativeResize(Eigen::NoChange, atoms.cols() + 1);
        atoms.col(atoms.cols() - 1) = atom;

        coeffs = atoms.colPivHouseholderQr().solve(y);
        residual = y - atoms * coeffs;
        res.residual_norm = residual.norm();
        res.residual_history.push_back(res.residual_norm);
        ++res.iterations;
    }

    res.alpha_hat.alpha.assign(n, cdouble{});
    for (std::size_t i = 0; i < res.support.size(); ++i) {
        res.alpha_hat.alpha[res.support[i]] = coeffs(static_cast<Eigen::Index>(i));
    }
    res.alpha_hat.support = res.support;
    res.signal_hat = synthesize(dict, res.alpha_hat);
    return res;
}

} // namespace chirpdict
