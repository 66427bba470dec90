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

#include "chirpdict/dictionary.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "chirpdict/errors.hpp"
#include "fft.hpp"

namespace chirpdict {

struct Dictionary::Plans {
    explicit Plans(std::size_t n) : forward(n, -1), backward(n, +1) {}

    detail::FftPlan forward;
    detail::FftPlan backward;
};

double SparseCoefficients::norm() const noexcept {
    double acc = 0.0;
    for (const auto& z : alpha) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

SparseCoefficients SparseCoefficients::unit(std::size_t n, std::size_t k) {
    if (k >= n) {
        throw InvalidParameter("unit coefficient index out of range");
    }
    SparseCoefficients c;
    c.alpha.assign(n, cdouble{});
    c.alpha[k] = 1.0;
    return c;
}

Dictionary::Dictionary(const ComplexSignal& reference) : Dictionary(reference, true) {}

Dictionary Dictionary::unchecked(const ComplexSignal& reference) { return {reference, false}; }

Dictionary::Dictionary(const ComplexSignal& reference, bool validate)
    : grid_(reference.grid()),
      phase_(reference.samples().begin(), reference.samples().end()),
      plans_(std::make_shared<const Plans>(reference.size())) {
    if (!validate) {
        return;
    }
    for (std::size_t n = 0; n < phase_.size(); ++n) {
        if (std::abs(std::abs(phase_[n]) - 1.0) > 1e-9) {
            throw InvalidParameter("reference sample " + std::to_string(n) +
                                   " is not unit modulus");
        }
    }
}

std::vector<cdouble> Dictionary::synthesize(std::span<const cdouble> alpha) const {
    if (alpha.size() != size()) {
        throw DimensionMismatch("coefficient vector length " + std::to_string(alpha.size()) +
                                " != dictionary size " + std::to_string(size()));
    }
    std::vector<cdouble> out(size());
    plans_->forward.execute(alpha.data(), out.data());
    const double scale = 1.0 / std::sqrt(static_cast<double>(size()));
    for (std::size_t m = 0; m < out.size(); ++m) {
        out[m] *= phase_[m] * scale;
    }
    return out;
}

std::vector<cdouble> Dictionary::analyze(std::span<const cdouble> signal) const {
    if (signal.size() != size()) {
        throw DimensionMismatch("signal length " + std::to_string(signal.size()) +
                                " != dictionary size " + std::to_string(size()));
    }
    std::vector<cdouble> dechirped(size());
    for (std::size_t m = 0; m < dechirped.size(); ++m) {
        dechirped[m] = signal[m] * std::conj(phase_[m]);
    }
    std::vector<cdouble> out(size());
    plans_->backward.execute(dechirped.data(), out.data());
    const double scale = 1.0 / std::sqrt(static_cast<double>(size()));
    for (auto& z : out) {
        z *= scale;
    }
    return out;
}

Dictionary build_dictionary(const ComplexSignal& reference) { return Dictionary(reference); }

ComplexSignal synthesize(const Dictionary& dict, const SparseCoefficients& alpha) {
    return {dict.grid(), dict.synthesize(alpha.alpha)};
}

SparseCoefficients analyze(const Dictionary& dict, const ComplexSignal& signal) {
    SparseCoefficients c;
    c.alpha = dict.analyze(signal.samples());
    return c;
}

Eigen::MatrixXcd materialize(const Dictionary& dict, std::size_t cap) {
    const std::size_t n = dict.size();
    if (n > cap) {
        throw InvalidParameter("dictionary size " + std::to_string(n) +
                               " exceeds materialization cap " + std::to_string(cap));
    }
    const auto ni = static_cast<Eigen::Index>(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    // Kernel values depend only on (m*n) mod N.
    std::vector<cdouble> kernel(n);
    for (std::size_t r = 0; r < n; ++r) {
        kernel[r] = std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>(r) /
                                          static_cast<double>(n));
    }
    Eigen::MatrixXcd d(ni, ni);
    const auto phase = dict.phase();
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t row = 0; row < n; ++row) {
            d(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                phase[row] * kernel[(row * col) % n];
        }
    }
    return d;
}

double orthogonality_defect(const Dictionary& dict, std::size_t cap) {
    const Eigen::MatrixXcd d = materialize(dict, cap);
    Eigen::MatrixXcd gram = d.adjoint() * d;
    gram.diagonal().array() -= 1.0;
    return gram.cwiseAbs().maxCoeff();
}

} // namespace chirpdict
