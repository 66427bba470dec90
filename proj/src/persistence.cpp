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

#include "chirpdict/persistence.hpp"

#include <array>
#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "chirpdict/errors.hpp"

namespace chirpdict {

namespace {

using json = nlohmann::json;

void put_u64(std::vector<unsigned char>& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        buf.push_back(static_cast<unsigned char>(v >> (8 * i)));
    }
}

void put_f64(std::vector<unsigned char>& buf, double v) { put_u64(buf, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
        v = (v << 8) | p[i];
    }
    return v;
}

double get_f64(const unsigned char* p) { return std::bit_cast<double>(get_u64(p)); }

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError(FormatError::Code::io, "cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string slurp_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError(FormatError::Code::io, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError(FormatError::Code::io, "cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw FormatError(FormatError::Code::io, "write failed for " + path.string());
    }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
    const std::string field = where.empty() ? key : where + "." + key;
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError(field, "missing required field");
    }
    return obj.at(key);
}

double number(const json& v, const std::string& field) {
    if (!v.is_number()) {
        throw ConfigError(field, "must be a number");
    }
    return v.get<double>();
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    return number(require(obj, key, where), where.empty() ? key : where + "." + key);
}

// Re-runs a type constructor and reports its complaint against `field`.
template <class F>
auto validated(const std::string& field, F&& make) {
    try {
        return make();
    } catch (const InvalidParameter& e) {
        throw ConfigError(field, e.what());
    }
}

} // namespace

void write_pulse(const std::filesystem::path& path, double sample_rate,
                 const std::vector<cdouble>& samples) {
    std::vector<unsigned char> buf;
    buf.reserve(pulse_header_bytes + 16 * samples.size());
    buf.insert(buf.end(), std::begin(pulse_magic), std::end(pulse_magic));
    buf.push_back(static_cast<unsigned char>(pulse_format_version & 0xff));
    buf.push_back(static_cast<unsigned char>(pulse_format_version >> 8));
    put_f64(buf, sample_rate);
    put_u64(buf, samples.size());
    for (const auto& z : samples) {
        put_f64(buf, z.real());
        put_f64(buf, z.imag());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError(FormatError::Code::io, "cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) {
        throw FormatError(FormatError::Code::io, "write failed for " + path.string());
    }
}

void write_pulse(const std::filesystem::path& path, const ComplexSignal& signal) {
    write_pulse(path, signal.grid().sample_rate(),
                std::vector<cdouble>(signal.samples().begin(), signal.samples().end()));
}

PulseData read_pulse(const std::filesystem::path& path) {
    const auto buf = slurp(path);
    if (buf.size() < 4 || std::memcmp(buf.data(), pulse_magic, 4) != 0) {
        throw FormatError(FormatError::Code::bad_magic, path.string() + ": not a CSRP pulse file");
    }
    if (buf.size() < pulse_header_bytes) {
        throw FormatError(FormatError::Code::truncated, path.string() + ": truncated header");
    }
    const auto version = static_cast<std::uint16_t>(buf[4] | (buf[5] << 8));
    if (version != pulse_format_version) {
        throw FormatError(FormatError::Code::unsupported_version,
                          path.string() + ": unsupported format version " + std::to_string(version));
    }
    PulseData pulse;
    pulse.sample_rate = get_f64(buf.data() + 6);
    const std::uint64_t n = get_u64(buf.data() + 14);
    const std::size_t payload = buf.size() - pulse_header_bytes;
    if (n > payload / 16 || payload < 16 * n) {
        throw FormatError(FormatError::Code::truncated,
                          path.string() + ": payload shorter than " + std::to_string(n) + " samples");
    }
    if (payload != 16 * n) {
        throw FormatError(FormatError::Code::trailing_data,
                          path.string() + ": unexpected bytes after payload");
    }
    pulse.samples.resize(n);
    const unsigned char* p = buf.data() + pulse_header_bytes;
    for (std::uint64_t i = 0; i < n; ++i, p += 16) {
        pulse.samples[i] = {get_f64(p), get_f64(p + 8)};
    }
    return pulse;
}

ComplexSignal to_signal(const PulseData& pulse, const SamplingGrid& grid) {
    if (pulse.sample_rate != grid.sample_rate()) {
        throw DimensionMismatch("pulse sample rate " + std::to_string(pulse.sample_rate) +
                                " Hz differs from configured " + std::to_string(grid.sample_rate()) +
                                " Hz");
    }
    return {grid, pulse.samples};
}

SceneConfig parse_scene(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("<document>", "top level must be an object");
    }

    const json& chirp_obj = require(doc, "chirp", "");
    const double fc = require_number(chirp_obj, "f_c", "chirp");
    const double gamma = require_number(chirp_obj, "gamma", "chirp");
    const double width = require_number(chirp_obj, "T", "chirp");
    if (!(gamma > 0.0)) {
        throw ConfigError("chirp.gamma", "must be > 0");
    }
    if (!(width > 0.0)) {
        throw ConfigError("chirp.T", "must be > 0");
    }
    if (!(fc >= 0.0)) {
        throw ConfigError("chirp.f_c", "must be >= 0");
    }
    const ChirpParams chirp = validated("chirp", [&] { return ChirpParams(fc, gamma, width); });

    const double fs = require_number(require(doc, "sampling", ""), "f_s", "sampling");
    if (!(fs > 0.0) || !std::isfinite(fs)) {
        throw ConfigError("sampling.f_s", "must be > 0");
    }

    const double tref = require_number(require(doc, "reference", ""), "t_ref", "reference");
    const ReferenceParams ref = validated("reference.t_ref", [&] { return ReferenceParams(tref); });

    const json& list = require(doc, "scatterers", "");
    if (!list.is_array()) {
        throw ConfigError("scatterers", "must be an array");
    }
    std::vector<Scatterer> scatterers;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "scatterers[" + std::to_string(i) + "]";
        const json& item = list[i];
        if (!item.is_object()) {
            throw ConfigError(where, "must be an object");
        }
        const double re = require_number(item, "amplitude_re", where);
        const double im = item.contains("amplitude_im") ? number(item["amplitude_im"], where + ".amplitude_im") : 0.0;
        const bool has_delay = item.contains("delay");
        const bool has_range = item.contains("range");
        if (has_delay == has_range) {
            throw ConfigError(where, "exactly one of 'delay' or 'range' is required");
        }
        if (has_delay) {
            const double d = number(item["delay"], where + ".delay");
            scatterers.push_back(validated(where, [&] { return Scatterer({re, im}, d); }));
        } else {
            const double r = number(item["range"], where + ".range");
            scatterers.push_back(validated(where, [&] { return Scatterer::at_range({re, im}, r); }));
        }
    }

    std::optional<CarrierSet> carriers;
    if (doc.contains("carriers")) {
        const json& c = doc["carriers"];
        if (!c.is_array()) {
            throw ConfigError("carriers", "must be an array of frequencies");
        }
        std::vector<double> fk;
        for (std::size_t k = 0; k < c.size(); ++k) {
            fk.push_back(number(c[k], "carriers[" + std::to_string(k) + "]"));
        }
        carriers = validated("carriers", [&] { return CarrierSet(std::move(fk)); });
    }

    return {chirp, fs, ref, Scene(std::move(scatterers)), std::move(carriers)};
}

SceneConfig load_scene(const std::filesystem::path& path) { return parse_scene(slurp_text(path)); }

void save_scene(const std::filesystem::path& path, const SceneConfig& config) {
    json doc;
    doc["chirp"] = {{"f_c", config.chirp.carrier()},
                    {"gamma", config.chirp.chirp_rate()},
                    {"T", config.chirp.pulse_width()}};
    doc["sampling"] = {{"f_s", config.sample_rate}};
    doc["reference"] = {{"t_ref", config.reference.t_ref}};
    json list = json::array();
    for (const auto& sc : config.scene.scatterers()) {
        list.push_back({{"amplitude_re", sc.amplitude.real()},
                        {"amplitude_im", sc.amplitude.imag()},
                        {"delay", sc.delay}});
    }
    doc["scatterers"] = std::move(list);
    if (config.carriers) {
        doc["carriers"] = std::vector<double>(config.carriers->carriers().begin(),
                                              config.carriers->carriers().end());
    }
    write_text(path, doc.dump(2) + "\n");
}

void write_descriptor(const std::filesystem::path& path, const MeasurementDescriptor& desc) {
    const json doc = {{"seed", desc.seed},
                      {"kind", std::string(to_string(desc.kind))},
                      {"M", desc.measurements},
                      {"N", desc.length}};
    write_text(path, doc.dump(2) + "\n");
}

MeasurementDescriptor read_descriptor(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(slurp_text(path));
    } catch (const json::parse_error& e) {
        throw ConfigError("<descriptor>", e.what());
    }
    auto count = [&](const char* key) {
        const json& v = require(doc, key, "");
        if (!v.is_number_unsigned()) {
            throw ConfigError(key, "must be a non-negative integer");
        }
        return v.get<std::uint64_t>();
    };
    const json& kind = require(doc, "kind", "");
    const auto parsed = kind.is_string() ? parse_sensing_kind(kind.get<std::string>()) : std::nullopt;
    if (!parsed) {
        throw ConfigError("kind", "must be 'gaussian' or 'bernoulli'");
    }
    return {count("seed"), *parsed, static_cast<std::size_t>(count("M")),
            static_cast<std::size_t>(count("N"))};
}

void export_coefficients_csv(const std::filesystem::path& path, const SparseCoefficients& coeffs) {
    std::string text = "bin,re,im,magnitude\n";
    char line[128];
    for (std::size_t k = 0; k < coeffs.alpha.size(); ++k) {
        const auto& z = coeffs.alpha[k];
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g\n", k, z.real(), z.imag(), std::abs(z));
        text += line;
    }
    write_text(path, text);
}

SparseCoefficients read_coefficients_csv(const std::filesystem::path& path) {
    std::istringstream in(slurp_text(path));
    std::string line;
    if (!std::getline(in, line) || line != "bin,re,im,magnitude") {
        throw FormatError(FormatError::Code::bad_magic, path.string() + ": missing CSV header");
    }
    SparseCoefficients c;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::size_t bin = 0;
        double re = 0.0;
        double im = 0.0;
        double mag = 0.0;
        if (std::sscanf(line.c_str(), "%zu,%lf,%lf,%lf", &bin, &re, &im, &mag) != 4 ||
            bin != c.alpha.size()) {
            throw FormatError(FormatError::Code::truncated, path.string() + ": malformed row '" + line + "'");
        }
        c.alpha.emplace_back(re, im);
    }
    return c;
}

} // namespace chirpdict
