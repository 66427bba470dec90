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

// Waveform, scene and sampling types, plus synthesis of the transmitted
// linear-FM pulse and its point-scatterer echoes on the discrete grid.
//
// All times are seconds, frequencies Hz, ranges metres. Samples are complex
// baseband doubles; every signal knows the grid it was sampled on.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace chirpdict {

using cdouble = std::complex<double>;

inline constexpr double speed_of_light = 299792458.0;

class ChirpParams {
public:
    // Throws InvalidParameter unless pulse_width > 0, chirp_rate > 0 and
    // carrier >= 0 (all finite).
    ChirpParams(double carrier_hz, double chirp_rate, double pulse_width);

    double carrier() const noexcept { return carrier_; }
    double chirp_rate() const noexcept { return rate_; }
    double pulse_width() const noexcept { return width_; }
    double bandwidth() const noexcept { return rate_ * width_; }

    // Same modulation with another carrier (one tone of a multi-tone pulse).
    ChirpParams with_carrier(double carrier_hz) const;

    bool operator==(const ChirpParams&) const = default;

private:
    double carrier_;
    double rate_;
    double width_;
};

struct Scatterer {
    // Throws InvalidParameter for delay < 0, zero amplitude or non-finite input.
    Scatterer(cdouble amplitude, double delay);

    static Scatterer at_range(cdouble amplitude, double range_m);

    cdouble amplitude;
    double delay;
};

class Scene {
public:
    Scene() = default;
    explicit Scene(std::vector<Scatterer> scatterers) : scatterers_(std::move(scatterers)) {}

    std::size_t size() const noexcept { return scatterers_.size(); }
    bool empty() const noexcept { return scatterers_.empty(); }
    std::span<const Scatterer> scatterers() const noexcept { return scatterers_; }
    const Scatterer& operator[](std::size_t i) const { return scatterers_[i]; }

    double min_delay() const;
    double max_delay() const;

    // Concatenation of both scatterer lists.
    Scene merged(const Scene& other) const;

private:
    std::vector<Scatterer> scatterers_;
};

// Uniform sampling of [-T/2, T/2]: t(n) = -T/2 + n/f_s for n = 0..N-1 with
// (N-1)/f_s <= T < N/f_s.
class SamplingGrid {
public:
    // Validates the two-sided inequality; throws InvalidParameter otherwise.
    SamplingGrid(double sample_rate, double pulse_width, std::size_t size);

    double sample_rate() const noexcept { return rate_; }
    double pulse_width() const noexcept { return width_; }
    std::size_t size() const noexcept { return size_; }

    double time(std::size_t n) const noexcept {
        return -0.5 * width_ + static_cast<double>(n) / rate_;
    }
    std::vector<double> times() const;

    bool operator==(const SamplingGrid&) const = default;

private:
    double rate_;
    double width_;
    std::size_t size_;
};

class ComplexSignal {
public:
    // Throws DimensionMismatch when samples.size() != grid.size().
    ComplexSignal(SamplingGrid grid, std::vector<cdouble> samples);

    static ComplexSignal zeros(const SamplingGrid& grid);

    const SamplingGrid& grid() const noexcept { return grid_; }
    std::span<const cdouble> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    const cdouble& operator[](std::size_t n) const { return samples_[n]; }

    // Mean of |x|^2 over the samples; 0 for an empty signal.
    double power() const noexcept;
    double norm() const noexcept;

private:
    SamplingGrid grid_;
    std::vector<cdouble> samples_;
};

// Carrier frequencies of a multi-tone pulse. All tones share chirp rate and
// pulse width; only the carrier differs.
class CarrierSet {
public:
    // Throws InvalidParameter when empty or any carrier is negative/non-finite.
    explicit CarrierSet(std::vector<double> carriers);

    std::size_t size() const noexcept { return carriers_.size(); }
    std::span<const double> carriers() const noexcept { return carriers_; }

private:
    std::vector<double> carriers_;
};

using DiagnosticSink = std::function<void(std::string_view)>;

// Writes "warning: ..." lines to std::clog.
DiagnosticSink clog_diagnostics();

// Smallest N with (N-1)/f_s <= T < N/f_s, evaluated in floating point.
std::size_t grid_size(double sample_rate, double pulse_width);

// N = floor(f_s*T) + 1, nudged so the grid inequality holds exactly in
// floating point. Warns through `warn` when f_s < 2B.
SamplingGrid make_grid(const ChirpParams& chirp, double sample_rate,
                       const DiagnosticSink& warn = clog_diagnostics());

ComplexSignal synth_transmit(const ChirpParams& chirp, const SamplingGrid& grid);

struct EchoOptions {
    // Confine each return to its physical support |t - t_d| <= T/2. Off by
    // default: exact sparsity in the dictionary holds for the ungated model.
    bool gate = false;
};

ComplexSignal synth_echo(const Scene& scene, const ChirpParams& chirp, const SamplingGrid& grid,
                         EchoOptions options = {});

// Echo of a pulse transmitted on every carrier in `carriers` simultaneously.
ComplexSignal synth_echo_multitone(const Scene& scene, const CarrierSet& carriers,
                                   const ChirpParams& chirp, const SamplingGrid& grid,
                                   EchoOptions options = {});

inline constexpr double noise_disabled = std::numeric_limits<double>::infinity();

// Adds circular complex Gaussian noise so that signal/noise power equals
// snr_db. Pass noise_disabled to get an unmodified copy. Throws
// InvalidParameter for NaN or -inf, ZeroPowerSignal for an all-zero input.
ComplexSignal add_awgn(const ComplexSignal& signal, double snr_db, std::uint64_t seed);

// Storage needed when a pulse is sampled directly (no stretch processing).
struct DataVolume {
    double samples_per_pulse; // f_s * T
    std::size_t grid_size;    // N of the sampling grid for the same pulse
    double bytes_per_pulse;
    double bytes_per_second;
    double bytes_per_hour;
};

DataVolume data_volume(double sample_rate, double pulse_width, int bits_per_sample = 32,
                       double pulses_per_second = 500.0);

} // namespace chirpdict
