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

// File formats.
//
// Pulse file (little-endian, 22-byte header):
//   offset 0   char[4]  "CSRP"
//   offset 4   uint16   format version (1)
//   offset 6   float64  sample rate, Hz
//   offset 14  uint64   sample count N
//   offset 22  N x (float64 re, float64 im)
//
// Scene configs and measurement descriptors are JSON documents.
//
// Concurrent reads of one file are fine; concurrent writes to the same path
// are not supported.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chirpdict/cs_codec.hpp"
#include "chirpdict/dictionary.hpp"
#include "chirpdict/signal_model.hpp"
#include "chirpdict/stretch.hpp"

namespace chirpdict {

inline constexpr char pulse_magic[4] = {'C', 'S', 'R', 'P'};
inline constexpr std::uint16_t pulse_format_version = 1;
inline constexpr std::size_t pulse_header_bytes = 22;

class FormatError : public std::runtime_error {
public:
    enum class Code { io, bad_magic, unsupported_version, truncated, trailing_data };

    FormatError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Code code() const noexcept { return code_; }

private:
    Code code_;
};

struct PulseData {
    double sample_rate = 0.0;
    std::vector<cdouble> samples;
};

void write_pulse(const std::filesystem::path& path, double sample_rate,
                 const std::vector<cdouble>& samples);
void write_pulse(const std::filesystem::path& path, const ComplexSignal& signal);

PulseData read_pulse(const std::filesystem::path& path);

// Attaches a grid to raw pulse samples. Throws DimensionMismatch when the
// sample rate or the sample count disagree with the grid.
ComplexSignal to_signal(const PulseData& pulse, const SamplingGrid& grid);

struct SceneConfig {
    ChirpParams chirp;
    double sample_rate;
    ReferenceParams reference;
    Scene scene;
    std::optional<CarrierSet> carriers;
};

// Throws ConfigError naming the offending field for missing or invalid keys.
SceneConfig parse_scene(const std::string& json_text);
SceneConfig load_scene(const std::filesystem::path& path);
void save_scene(const std::filesystem::path& path, const SceneConfig& config);

void write_descriptor(const std::filesystem::path& path, const MeasurementDescriptor& desc);
MeasurementDescriptor read_descriptor(const std::filesystem::path& path);

// "bin,re,im,magnitude" followed by one row per bin, 17 significant digits.
void export_coefficients_csv(const std::filesystem::path& path, const SparseCoefficients& alpha);
SparseCoefficients read_coefficients_csv(const std::filesystem::path& path);

} // namespace chirpdict
