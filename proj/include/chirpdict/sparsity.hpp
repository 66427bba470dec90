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

// Range-bin bookkeeping and sparsity metrics.
//
// A target occupies few range cells of width c/(2B) inside a long observed
// window. Stretch processing maps each occupied cell to one IF tone and the
// DFT maps each tone to one coefficient bin, so the echo's coefficient vector
// has as many significant entries as there are occupied cells.

#pragma once

#include <cstddef>
#include <vector>

#include "chirpdict/dictionary.hpp"
#include "chirpdict/signal_model.hpp"
#include "chirpdict/stretch.hpp"

namespace chirpdict {

// [low, high) split into cells [low + i*dR, low + (i+1)*dR), i = 0..count-1,
// with count*dR <= high - low < (count+1)*dR.
struct RangeGrid {
    double low;
    double high;
    double resolution; // c / (2B)
    std::size_t count;

    double bin_start(std::size_t i) const noexcept {
        return low + static_cast<double>(i) * resolution;
    }
};

RangeGrid make_range_grid(double low_m, double high_m, double bandwidth);

double delay_of_range(double range_m);
double range_of_delay(double delay_s);

// Coefficient bin holding a tone of signed frequency f: mod(round(-f N/f_s), N).
std::size_t bin_of_frequency(double frequency, const SamplingGrid& grid);

// Bin where analyze() peaks for a scatterer at `delay`. Throws
// AliasingViolation if the delay breaks the aliasing bound for this t_ref.
std::size_t expected_bin(double delay, const ReferenceParams& ref, const ChirpParams& chirp,
                         const SamplingGrid& grid);

// Moves every delay to the nearest value whose IF tone is an exact multiple
// of f_s/N, so each scatterer lands in a single coefficient bin.
Scene snap_scene_to_grid(const Scene& scene, const ReferenceParams& ref, const ChirpParams& chirp,
                         const SamplingGrid& grid);

struct SparsityReport {
    std::vector<std::size_t> support; // ascending bin order
    std::size_t support_size = 0;
    double energy_fraction = 0.0;
    std::vector<std::size_t> top_bins; // support ranked by decreasing magnitude
};

inline constexpr double default_support_threshold = 1e-6;

// Support is every bin with |alpha_k| >= rel_threshold * max|alpha|.
SparsityReport sparsity_report(const SparseCoefficients& alpha,
                               double rel_threshold = default_support_threshold);

} // namespace chirpdict
