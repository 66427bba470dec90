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

// Orthogonal sparsifying dictionary for chirp echoes.
//
// D = Phi * Psi, where Phi = diag(s_ref) holds the sampled reference chirp and
// Psi is the unitary DFT basis Psi[m,n] = exp(-j2pi mn/N)/sqrt(N) with
// zero-based indices. |s_ref(n)| = 1 makes Phi unitary, so D is unitary and
// the coefficients of an echo are simply alpha = D^H s_r: dechirp, then DFT.
//
// D is kept as an operator (diagonal + FFT plans). A dense matrix is only
// produced by materialize(), which exists for verification at small N.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "chirpdict/signal_model.hpp"

namespace chirpdict {

namespace detail {
class FftPlan;
}

inline constexpr std::size_t default_materialize_cap = 2048;

struct SparseCoefficients {
    std::vector<cdouble> alpha;
    // Filled by callers that threshold; analyze() leaves it empty.
    std::vector<std::size_t> support;

    std::size_t size() const noexcept { return alpha.size(); }
    double norm() const noexcept;

    static SparseCoefficients unit(std::size_t n, std::size_t k);
};

class Dictionary {
public:
    // Rejects reference samples whose modulus differs from 1 by more than 1e-9.
    explicit Dictionary(const ComplexSignal& reference);

    // Skips the unit-modulus check. Only for exercising the orthogonality
    // checks with a deliberately broken diagonal.
    static Dictionary unchecked(const ComplexSignal& reference);

    std::size_t size() const noexcept { return phase_.size(); }
    const SamplingGrid& grid() const noexcept { return grid_; }
    std::span<const cdouble> phase() const noexcept { return phase_; }

    // s = Phi (Psi alpha)
    std::vector<cdouble> synthesize(std::span<const cdouble> alpha) const;
    // alpha = Psi^H (Phi^H s)
    std::vector<cdouble> analyze(std::span<const cdouble> signal) const;

private:
    struct Plans;

    Dictionary(const ComplexSignal& reference, bool validate);

    SamplingGrid grid_;
    std::vector<cdouble> phase_;
    std::shared_ptr<const Plans> plans_;
};

Dictionary build_dictionary(const ComplexSignal& reference);

ComplexSignal synthesize(const Dictionary& dict, const SparseCoefficients& alpha);
SparseCoefficients analyze(const Dictionary& dict, const ComplexSignal& signal);

// Dense Phi*Psi built entry by entry from the definition (independent of the
// FFT path). Throws InvalidParameter when N exceeds `cap`.
Eigen::MatrixXcd materialize(const Dictionary& dict, std::size_t cap = default_materialize_cap);

// max |(D^H D - I)_{ij}| on the materialized matrix.
double orthogonality_defect(const Dictionary& dict, std::size_t cap = default_materialize_cap);

} // namespace chirpdict
