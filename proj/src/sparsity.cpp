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

#include "chirpdict/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "chirpdict/errors.hpp"

namespace chirpdict {

RangeGrid make_range_grid(double low_m, double high_m, double bandwidth) {
    if (!std::isfinite(low_m) || !std::isfinite(high_m) || !(low_m < high_m)) {
        throw InvalidParameter("range window must satisfy low < high");
    }
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw InvalidParameter("bandwidth must be > 0");
    }
    const double res = speed_of_light / (2.0 * bandwidth);
    const double span = high_m - low_m;
    auto count = static_cast<std::size_t>(std::floor(span / res));
    while (static_cast<double>(count + 1) * res <= span) {
        ++count;
    }
    while (count > 0 && static_cast<double>(count) * res > span) {
        --count;
    }
    return {low_m, high_m, res, count};
}

double delay_of_range(double range_m) {
    if (!(range_m >= 0.0)) {
        throw InvalidParameter("range must be >= 0");
    }
    return 2.0 * range_m / speed_of_light;
}

double range_of_delay(double delay_s) {
    if (!(delay_s >= 0.0)) {
        throw InvalidParameter("delay must be >= 0");
    }
    return 0.5 * speed_of_light * delay_s;
}

std::size_t bin_of_frequency(double frequency, const SamplingGrid& grid) {
    const auto n = static_cast<long long>(grid.size());
    const auto k = std::llround(-frequency * static_cast<double>(n) / grid.sample_rate());
    return static_cast<std::size_t>(((k % n) + n) % n);
}

std::size_t expected_bin(double delay, const ReferenceParams& ref, const ChirpParams& chirp,
                         const SamplingGrid& grid) {
    const double sweep = chirp.chirp_rate() * (delay - ref.t_ref);
    if (grid.sample_rate() < 2.0 * std::abs(sweep)) {
        throw AliasingViolation("IF tone " + std::to_string(-sweep) +
                                " Hz violates f_s >= 2*gamma*|t_d - t_ref|");
    }
    return bin_of_frequency(-sweep, grid);
}

Scene snap_scene_to_grid(const Scene& scene, const ReferenceParams& ref, const ChirpParams& chirp,
                         const SamplingGrid& grid) {
    const double step = grid.sample_rate() / (chirp.chirp_rate() * static_cast<double>(grid.size()));
    std::vector<Scatterer> out;
    out.reserve(scene.size());
    for (const auto& sc : scene.scatterers()) {
        double k = std::round((sc.delay - ref.t_ref) / step);
        double snapped = ref.t_ref + k * step;
        // Rounding can cross zero when t_ref sits below one step; take the
        // next grid point up instead of producing a negative delay.
        while (snapped < 0.0) {
            k += 1.0;
            snapped = ref.t_ref + k * step;
        }
        out.emplace_back(sc.amplitude, snapped);
    }
    return Scene(std::move(out));
}

SparsityReport sparsity_report(const SparseCoefficients& coeffs, double rel_threshold) {
    if (!(rel_threshold > 0.0 && rel_threshold < 1.0)) {
        throw InvalidParameter("relative threshold must lie in (0, 1)");
    }
    SparsityReport rep;
    const auto& a = coeffs.alpha;
    double peak = 0.0;
    double total = 0.0;
    for (const auto& z : a) {
        peak = std::max(peak, std::abs(z));
        total += std::norm(z);
    }
    if (peak == 0.0) {
        return rep;
    }
    const double cut = rel_threshold * peak;
    double kept = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::abs(a[k]) >= cut) {
            rep.support.push_back(k);
            kept += std::norm(a[k]);
        }
    }
    rep.support_size = rep.support.size();
    rep.energy_fraction = std::clamp(kept / total, 0.0, 1.0);
    rep.top_bins = rep.support;
    std::stable_sort(rep.top_bins.begin(), rep.top_bins.end(), [&](std::size_t i, std::size_t j) {
        return std::abs(a[i]) > std::abs(a[j]);
    });
    return rep;
}

} // namespace chirpdict
