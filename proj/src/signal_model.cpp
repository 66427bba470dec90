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

#include "chirpdict/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <string>

#include "chirpdict/errors.hpp"
#include "phase.hpp"

namespace chirpdict {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw InvalidParameter(std::string(name) + " must be finite");
    }
}

} // namespace

ChirpParams::ChirpParams(double carrier_hz, double chirp_rate, double pulse_width)
    : carrier_(carrier_hz), rate_(chirp_rate), width_(pulse_width) {
    require_finite(carrier_hz, "carrier frequency");
    require_finite(chirp_rate, "chirp rate");
    require_finite(pulse_width, "pulse width");
    if (pulse_width <= 0.0) {
        throw InvalidParameter("pulse width must be > 0");
    }
    if (chirp_rate <= 0.0) {
        throw InvalidParameter("chirp rate must be > 0 (up-chirp only)");
    }
    if (carrier_hz < 0.0) {
        throw InvalidParameter("carrier frequency must be >= 0");
    }
}

ChirpParams ChirpParams::with_carrier(double carrier_hz) const {
    return {carrier_hz, rate_, width_};
}

Scatterer::Scatterer(cdouble amp, double delay_s) : amplitude(amp), delay(delay_s) {
    require_finite(amp.real(), "scatterer amplitude");
    require_finite(amp.imag(), "scatterer amplitude");
    require_finite(delay_s, "scatterer delay");
    if (delay_s < 0.0) {
        throw InvalidParameter("scatterer delay must be >= 0");
    }
    if (std::abs(amp) == 0.0) {
        throw InvalidParameter("scatterer amplitude must be nonzero");
    }
}

Scatterer Scatterer::at_range(cdouble amp, double range_m) {
    require_finite(range_m, "scatterer range");
    if (range_m < 0.0) {
        throw InvalidParameter("scatterer range must be >= 0");
    }
    return {amp, 2.0 * range_m / speed_of_light};
}

double Scene::min_delay() const {
    if (scatterers_.empty()) {
        throw InvalidParameter("empty scene has no delays");
    }
    return std::min_element(scatterers_.begin(), scatterers_.end(),
                            [](const Scatterer& a, const Scatterer& b) { return a.delay < b.delay; })
        ->delay;
}

double Scene::max_delay() const {
    if (scatterers_.empty()) {
        throw InvalidParameter("empty scene has no delays");
    }
    return std::max_element(scatterers_.begin(), scatterers_.end(),
                            [](const Scatterer& a, const Scatterer& b) { return a.delay < b.delay; })
        ->delay;
}

Scene Scene::merged(const Scene& other) const {
    std::vector<Scatterer> all = scatterers_;
    all.insert(all.end(), other.scatterers_.begin(), other.scatterers_.end());
    return Scene(std::move(all));
}

SamplingGrid::SamplingGrid(double sample_rate, double pulse_width, std::size_t size)
    : rate_(sample_rate), width_(pulse_width), size_(size) {
    require_finite(sample_rate, "sample rate");
    require_finite(pulse_width, "pulse width");
    if (sample_rate <= 0.0 || pulse_width <= 0.0) {
        throw InvalidParameter("sample rate and pulse width must be > 0");
    }
    const double n = static_cast<double>(size);
    if (size == 0 || !((n - 1.0) / sample_rate <= pulse_width && pulse_width < n / sample_rate)) {
        throw InvalidParameter("grid size violates (N-1)/f_s <= T < N/f_s");
    }
}

std::vector<double> SamplingGrid::times() const {
    std::vector<double> t(size_);
    for (std::size_t n = 0; n < size_; ++n) {
        t[n] = time(n);
    }
    return t;
}

ComplexSignal::ComplexSignal(SamplingGrid grid, std::vector<cdouble> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size()) {
        throw DimensionMismatch("signal has " + std::to_string(samples_.size()) +
                                " samples, grid has " + std::to_string(grid_.size()));
    }
}

ComplexSignal ComplexSignal::zeros(const SamplingGrid& grid) {
    return {grid, std::vector<cdouble>(grid.size())};
}

double ComplexSignal::power() const noexcept {
    if (samples_.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (const auto& z : samples_) {
        acc += std::norm(z);
    }
    return acc / static_cast<double>(samples_.size());
}

double ComplexSignal::norm() const noexcept {
    double acc = 0.0;
    for (const auto& z : samples_) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

CarrierSet::CarrierSet(std::vector<double> carriers) : carriers_(std::move(carriers)) {
    if (carriers_.empty()) {
        throw InvalidParameter("carrier set must hold at least one carrier");
    }
    for (double f : carriers_) {
        require_finite(f, "carrier frequency");
        if (f < 0.0) {
            throw InvalidParameter("carrier frequency must be >= 0");
        }
    }
}

DiagnosticSink clog_diagnostics() {
    return [](std::string_view msg) { std::clog << "warning: " << msg << '\n'; };
}

std::size_t grid_size(double sample_rate, double pulse_width) {
    require_finite(sample_rate, "sample rate");
    require_finite(pulse_width, "pulse width");
    if (sample_rate <= 0.0) {
        throw InvalidParameter("sample rate must be > 0");
    }
    if (pulse_width <= 0.0) {
        throw InvalidParameter("pulse width must be > 0");
    }
    const double product = sample_rate * pulse_width;
    if (product > 1e12) {
        throw InvalidParameter("f_s*T too large for an in-memory grid");
    }
    auto n = static_cast<std::size_t>(std::floor(product)) + 1;
    // f_s*T is rounded, so the floor can land one off; settle on the N that
    // satisfies the inequality as SamplingGrid evaluates it.
    while (static_cast<double>(n) / sample_rate <= pulse_width) {
        ++n;
    }
    while (n > 1 && static_cast<double>(n - 1) / sample_rate > pulse_width) {
        --n;
    }
    return n;
}

SamplingGrid make_grid(const ChirpParams& chirp, double sample_rate, const DiagnosticSink& warn) {
    const std::size_t n = grid_size(sample_rate, chirp.pulse_width());
    if (sample_rate < 2.0 * chirp.bandwidth() && warn) {
        warn("sample rate " + std::to_string(sample_rate) + " Hz is below 2B = " +
             std::to_string(2.0 * chirp.bandwidth()) + " Hz");
    }
    return {sample_rate, chirp.pulse_width(), n};
}

namespace {

void require_grid_for(const ChirpParams& chirp, const SamplingGrid& grid) {
    if (grid.pulse_width() != chirp.pulse_width()) {
        throw DimensionMismatch("grid was built for a different pulse width");
    }
}

void accumulate_echo(std::vector<cdouble>& out, const Scene& scene, const ChirpParams& chirp,
                     const SamplingGrid& grid, const EchoOptions& options) {
    const double half = 0.5 * grid.pulse_width();
    for (const auto& sc : scene.scatterers()) {
        for (std::size_t n = 0; n < out.size(); ++n) {
            const double t = grid.time(n);
            if (options.gate && std::abs(t - sc.delay) > half) {
                continue;
            }
            out[n] += sc.amplitude * detail::phasor(detail::chirp_cycles(
                                         chirp.carrier(), chirp.chirp_rate(), t, sc.delay));
        }
    }
}

} // namespace

ComplexSignal synth_transmit(const ChirpParams& chirp, const SamplingGrid& grid) {
    require_grid_for(chirp, grid);
    std::vector<cdouble> s(grid.size());
    for (std::size_t n = 0; n < s.size(); ++n) {
        s[n] = detail::phasor(
            detail::chirp_cycles(chirp.carrier(), chirp.chirp_rate(), grid.time(n), 0.0));
    }
    return {grid, std::move(s)};
}

ComplexSignal synth_echo(const Scene& scene, const ChirpParams& chirp, const SamplingGrid& grid,
                         EchoOptions options) {
    require_grid_for(chirp, grid);
    std::vector<cdouble> s(grid.size());
    accumulate_echo(s, scene, chirp, grid, options);
    return {grid, std::move(s)};
}

ComplexSignal synth_echo_multitone(const Scene& scene, const CarrierSet& carriers,
                                   const ChirpParams& chirp, const SamplingGrid& grid,
                                   EchoOptions options) {
    require_grid_for(chirp, grid);
    std::vector<cdouble> s(grid.size());
    for (double f : carriers.carriers()) {
        accumulate_echo(s, scene, chirp.with_carrier(f), grid, options);
    }
    return {grid, std::move(s)};
}

ComplexSignal add_awgn(const ComplexSignal& signal, double snr_db, std::uint64_t seed) {
    if (snr_db == noise_disabled) {
        return signal;
    }
    if (!std::isfinite(snr_db)) {
        throw InvalidParameter("snr_db must be finite or noise_disabled");
    }
    const double ps = signal.power();
    if (ps == 0.0) {
        throw ZeroPowerSignal("SNR is undefined for a zero-power signal");
    }
    const double noise_power = ps / std::pow(10.0, snr_db / 10.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 * noise_power));
    std::vector<cdouble> out(signal.samples().begin(), signal.samples().end());
    for (auto& z : out) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        z += cdouble(re, im);
    }
    return {signal.grid(), std::move(out)};
}

DataVolume data_volume(double sample_rate, double pulse_width, int bits_per_sample,
                       double pulses_per_second) {
    if (bits_per_sample <= 0 || !(pulses_per_second > 0.0)) {
        throw InvalidParameter("bits per sample and pulse rate must be > 0");
    }
    DataVolume v{};
    v.grid_size = grid_size(sample_rate, pulse_width);
    v.samples_per_pulse = sample_rate * pulse_width;
    v.bytes_per_pulse = v.samples_per_pulse * bits_per_sample / 8.0;
    v.bytes_per_second = v.bytes_per_pulse * pulses_per_second;
    v.bytes_per_hour = v.bytes_per_second * 3600.0;
    return v;
}

} // namespace chirpdict
