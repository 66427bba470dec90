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

// chirpdict: simulate, analyze, compress and reconstruct chirp echoes.
//
// Exit codes: 0 success, 1 unexpected error, 2 invalid input (arguments,
// config, file format, aliasing), 3 failed numerical check.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "chirpdict/cs_codec.hpp"
#include "chirpdict/dictionary.hpp"
#include "chirpdict/errors.hpp"
#include "chirpdict/persistence.hpp"
#include "chirpdict/selftest.hpp"
#include "chirpdict/signal_model.hpp"
#include "chirpdict/sparsity.hpp"
#include "chirpdict/stretch.hpp"
#include "chirpdict/version.hpp"

namespace {

using namespace chirpdict;
using json = nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_check_failed = 3;

struct CheckFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

class Manifest {
public:
    explicit Manifest(std::string command) {
        doc_["tool"] = "chirpdict";
        doc_["version"] = chirpdict::version;
        doc_["command"] = std::move(command);
        doc_["parameters"] = json::object();
        doc_["seeds"] = json::object();
        doc_["inputs"] = json::array();
        doc_["outputs"] = json::array();
    }

    json& parameters() { return doc_["parameters"]; }
    json& seeds() { return doc_["seeds"]; }
    void input(const std::string& p) { doc_["inputs"].push_back(p); }
    void output(const std::string& p) { doc_["outputs"].push_back(p); }

    void emit(const std::string& path) const {
        std::cout << "manifest: " << doc_.dump() << '\n';
        if (!path.empty()) {
            std::ofstream out(path, std::ios::trunc);
            out << doc_.dump(2) << '\n';
            if (!out) {
                throw FormatError(FormatError::Code::io, "cannot write manifest " + path);
            }
        }
    }

private:
    json doc_;
};

void record_config(Manifest& m, const SceneConfig& cfg, const SamplingGrid& grid) {
    auto& p = m.parameters();
    p["f_c"] = cfg.chirp.carrier();
    p["gamma"] = cfg.chirp.chirp_rate();
    p["T"] = cfg.chirp.pulse_width();
    p["B"] = cfg.chirp.bandwidth();
    p["f_s"] = cfg.sample_rate;
    p["N"] = grid.size();
    p["t_ref"] = cfg.reference.t_ref;
    p["scatterers"] = cfg.scene.size();
    if (cfg.carriers) {
        p["carriers"] = cfg.carriers->size();
    }
}

SamplingGrid grid_for(const SceneConfig& cfg) {
    return make_grid(cfg.chirp, cfg.sample_rate,
                     [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; });
}

void print_data_volume(double fs, double width) {
    const DataVolume v = data_volume(fs, width);
    std::cout << "samples per pulse (f_s*T): " << fmt("%.0f", v.samples_per_pulse)
              << "  (grid N = " << v.grid_size << ")\n"
              << "direct sampling at 32 bits: " << fmt("%.6g", v.bytes_per_pulse / 1e3)
              << " kB/pulse, " << fmt("%.6g", v.bytes_per_second / 1e6) << " MB/s at 500 pulses/s, "
              << fmt("%.6g", v.bytes_per_hour / 1e9) << " GB/hour\n";
}

// --- simulate -------------------------------------------------------------

struct SimulateArgs {
    std::string config;
    std::string out;
    std::optional<double> snr_db;
    std::uint64_t seed = 1;
    bool multitone = false;
    bool gate = false;
    std::string manifest;
};

int cmd_simulate(const SimulateArgs& a) {
    const SceneConfig cfg = load_scene(a.config);
    const SamplingGrid grid = grid_for(cfg);
    Manifest man("simulate");
    man.input(a.config);
    record_config(man, cfg, grid);
    man.parameters()["multitone"] = a.multitone;
    man.parameters()["gate"] = a.gate;

    const EchoOptions opts{a.gate};
    ComplexSignal echo = [&] {
        if (!a.multitone) {
            return synth_echo(cfg.scene, cfg.chirp, grid, opts);
        }
        if (!cfg.carriers) {
            throw ConfigError("carriers", "--multitone needs a carriers list in the config");
        }
        return synth_echo_multitone(cfg.scene, *cfg.carriers, cfg.chirp, grid, opts);
    }();
    if (a.snr_db) {
        echo = add_awgn(echo, *a.snr_db, a.seed);
        man.parameters()["snr_db"] = *a.snr_db;
        man.seeds()["noise"] = a.seed;
    }
    write_pulse(a.out, echo);
    man.output(a.out);

    std::cout << "N: " << grid.size() << '\n'
              << "B: " << fmt("%.9g", cfg.chirp.bandwidth()) << " Hz\n"
              << "gamma: " << fmt("%.9g", cfg.chirp.chirp_rate()) << " Hz/s\n"
              << "f_s: " << fmt("%.9g", cfg.sample_rate) << " Hz\n";
    if (cfg.scene.empty()) {
        std::cout << "valid t_ref interval: n/a (no scatterers)\n";
    } else {
        try {
            const TrefInterval iv = valid_tref_interval(cfg.scene, cfg.chirp, cfg.sample_rate);
            std::cout << "valid t_ref interval: [" << fmt("%.12g", iv.lo) << ", "
                      << fmt("%.12g", iv.hi) << "] s\n";
        } catch (const SpreadTooLarge& e) {
            std::cout << "valid t_ref interval: empty (" << e.what() << ")\n";
        }
        const AliasingCheck chk = check_aliasing(cfg.scene, cfg.chirp, cfg.reference, cfg.sample_rate);
        std::cout << "configured t_ref " << fmt("%.12g", cfg.reference.t_ref) << " s: "
                  << (chk.ok ? "no aliasing" : "ALIASED") << '\n';
    }
    print_data_volume(cfg.sample_rate, cfg.chirp.pulse_width());
    man.emit(a.manifest);
    return exit_ok;
}

// --- analyze --------------------------------------------------------------

struct AnalyzeArgs {
    std::string pulse;
    std::string config;
    std::string out_csv;
    double threshold = default_support_threshold;
    bool multitone = false;
    std::string manifest;
};

int cmd_analyze(const AnalyzeArgs& a) {
    const SceneConfig cfg = load_scene(a.config);
    const SamplingGrid grid = grid_for(cfg);
    const ComplexSignal signal = to_signal(read_pulse(a.pulse), grid);
    Manifest man("analyze");
    man.input(a.pulse);
    man.input(a.config);
    record_config(man, cfg, grid);
    man.parameters()["threshold"] = a.threshold;

    const AliasingCheck chk = check_aliasing(cfg.scene, cfg.chirp, cfg.reference, cfg.sample_rate);
    if (!chk.ok) {
        std::ostringstream msg;
        msg << "t_ref = " << cfg.reference.t_ref
            << " s violates the aliasing bound f_s >= 2*gamma*|t_d - t_ref| for scatterer(s)";
        for (std::size_t i = 0; i < chk.margins.size(); ++i) {
            if (chk.margins[i] < 0.0) {
                msg << ' ' << i << " (margin " << chk.margins[i] << " Hz)";
            }
        }
        throw AliasingViolation(msg.str());
    }

    const Dictionary dict = build_dictionary(synth_reference(cfg.chirp, cfg.reference, grid));
    SparseCoefficients alpha = analyze(dict, signal);
    const SparsityReport rep = sparsity_report(alpha, a.threshold);
    alpha.support = rep.support;
    export_coefficients_csv(a.out_csv, alpha);
    man.output(a.out_csv);

    std::cout << "N: " << grid.size() << '\n'
              << "support_size: " << rep.support_size << '\n'
              << "energy_fraction: " << fmt("%.15g", rep.energy_fraction) << '\n'
              << "support:";
    for (auto k : rep.support) {
        std::cout << ' ' << k;
    }
    std::cout << '\n';

    const std::optional<CarrierSet> carriers = a.multitone ? cfg.carriers : std::nullopt;
    if (a.multitone && !carriers) {
        throw ConfigError("carriers", "--multitone needs a carriers list in the config");
    }
    const auto freqs = if_frequencies(cfg.scene, cfg.chirp, cfg.reference, carriers);
    const std::size_t per = carriers ? carriers->size() : 1;
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        const std::size_t k = bin_of_frequency(freqs[j], grid);
        const bool hit = std::binary_search(rep.support.begin(), rep.support.end(), k);
        std::cout << "scatterer " << j / per;
        if (carriers) {
            std::cout << " carrier " << j % per;
        }
        std::cout << ": expected bin " << k << ", |alpha| = " << fmt("%.9g", std::abs(alpha.alpha[k]))
                  << (hit ? ", in support" : ", NOT in support") << '\n';
    }
    man.emit(a.manifest);
    return exit_ok;
}

// --- compress / reconstruct -----------------------------------------------

std::string descriptor_path(const std::string& measurements) { return measurements + ".json"; }

struct CompressArgs {
    std::string pulse;
    std::string config;
    std::string out;
    std::size_t m = 0;
    std::string kind = "gaussian";
    std::uint64_t seed = 1;
    std::string manifest;
};

std::optional<SensingKind> kind_or_throw(const std::string& name) {
    auto k = parse_sensing_kind(name);
    if (!k) {
        throw InvalidParameter("--kind must be gaussian or bernoulli");
    }
    return k;
}

int cmd_compress(const CompressArgs& a) {
    const SceneConfig cfg = load_scene(a.config);
    const SamplingGrid grid = grid_for(cfg);
    const PulseData pulse = read_pulse(a.pulse);
    const ComplexSignal signal = to_signal(pulse, grid);
    const SensingKind kind = *kind_or_throw(a.kind);
    const SensingOperator sensing = make_sensing(a.m, grid.size(), kind, a.seed);
    const Measurements meas = compress(sensing, signal);

    write_pulse(a.out, pulse.sample_rate, meas.y);
    write_descriptor(descriptor_path(a.out), meas.provenance);

    Manifest man("compress");
    man.input(a.pulse);
    man.input(a.config);
    record_config(man, cfg, grid);
    man.parameters()["M"] = a.m;
    man.parameters()["kind"] = a.kind;
    man.seeds()["sensing"] = a.seed;
    man.output(a.out);
    man.output(descriptor_path(a.out));

    std::cout << "N: " << grid.size() << "\nM: " << a.m << '\n'
              << "compression ratio N/M: "
              << fmt("%.6g", static_cast<double>(grid.size()) / static_cast<double>(a.m)) << '\n';
    man.emit(a.manifest);
    return exit_ok;
}

struct ReconstructArgs {
    std::string measurements;
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> kind;
    std::optional<std::size_t> k_max;
    double tol = 1e-9;
    std::string original;
    std::string manifest;
};

int cmd_reconstruct(const ReconstructArgs& a) {
    const SceneConfig cfg = load_scene(a.config);
    const SamplingGrid grid = grid_for(cfg);
    const PulseData meas_file = read_pulse(a.measurements);
    MeasurementDescriptor desc = read_descriptor(descriptor_path(a.measurements));
    if (a.seed) {
        desc.seed = *a.seed;
    }
    if (a.kind) {
        desc.kind = *kind_or_throw(*a.kind);
    }
    if (desc.length != grid.size()) {
        throw DimensionMismatch("descriptor N = " + std::to_string(desc.length) +
                                " but the config grid has N = " + std::to_string(grid.size()));
    }
    if (desc.measurements != meas_file.samples.size()) {
        throw DimensionMismatch("descriptor M disagrees with the measurement file length");
    }
    const SensingOperator sensing = make_sensing(desc.measurements, desc.length, desc.kind, desc.seed);
    const Dictionary dict = build_dictionary(synth_reference(cfg.chirp, cfg.reference, grid));
    const std::size_t k_max = a.k_max.value_or(std::max<std::size_t>(1, desc.measurements / 4));

    const Measurements meas{meas_file.samples, desc};
    const ReconstructionResult res = reconstruct_omp(meas, sensing, dict, k_max, a.tol);
    write_pulse(a.out, res.signal_hat);

    Manifest man("reconstruct");
    man.input(a.measurements);
    man.input(descriptor_path(a.measurements));
    man.input(a.config);
    record_config(man, cfg, grid);
    man.parameters()["M"] = desc.measurements;
    man.parameters()["kind"] = std::string(to_string(desc.kind));
    man.parameters()["k_max"] = k_max;
    man.parameters()["tol"] = a.tol;
    man.seeds()["sensing"] = desc.seed;
    man.output(a.out);

    double ynorm = 0.0;
    for (const auto& z : meas.y) {
        ynorm += std::norm(z);
    }
    ynorm = std::sqrt(ynorm);
    const double rel_residual = ynorm > 0.0 ? res.residual_norm / ynorm : 0.0;

    std::vector<std::size_t> sorted = res.support;
    std::sort(sorted.begin(), sorted.end());
    std::cout << "N: " << grid.size() << "\nM: " << desc.measurements << '\n'
              << "compression ratio N/M: "
              << fmt("%.6g", static_cast<double>(grid.size()) / static_cast<double>(desc.measurements))
              << '\n'
              << "iterations: " << res.iterations << '\n'
              << "support:";
    for (auto k : sorted) {
        std::cout << ' ' << k;
    }
    std::cout << "\nrelative residual: " << fmt("%.6e", rel_residual) << '\n';

    if (!a.original.empty()) {
        man.input(a.original);
        const ComplexSignal orig = to_signal(read_pulse(a.original), grid);
        double err = 0.0;
        for (std::size_t n = 0; n < orig.size(); ++n) {
            err += std::norm(orig[n] - res.signal_hat[n]);
        }
        const double on = orig.norm();
        const double rel = on > 0.0 ? std::sqrt(err) / on : std::sqrt(err);
        std::cout << "relative error: " << fmt("%.6e", rel) << '\n';
    }
    man.emit(a.manifest);

    if (res.residual_norm > a.tol * ynorm) {
        throw CheckFailed("reconstruction residual " + fmt("%.3e", rel_residual) +
                          " exceeds tolerance " + fmt("%.3e", a.tol) +
                          " (wrong sensing seed/kind or signal not sparse?)");
    }
    return exit_ok;
}

// --- selftest -------------------------------------------------------------

struct SelftestArgs {
    std::uint64_t seed = SelftestOptions{}.seed;
    bool inject_fault = false;
    std::string manifest;
};

int cmd_selftest(const SelftestArgs& a) {
    Manifest man("selftest");
    man.seeds()["selftest"] = a.seed;
    man.parameters()["inject_fault"] = a.inject_fault;

    const auto checks = run_selftest({a.seed, a.inject_fault});
    std::vector<std::string> failed;
    for (const auto& c : checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << fmt("%.3e", c.value)
                  << " (limit " << fmt("%.3e", c.threshold) << ")\n";
        if (!c.passed) {
            failed.push_back(c.name);
        }
    }
    print_data_volume(2e9, 50e-6);
    man.emit(a.manifest);
    if (!failed.empty()) {
        std::string msg = "failed invariants:";
        for (const auto& f : failed) {
            msg += "\n  " + f;
        }
        throw CheckFailed(msg);
    }
    std::cout << "all " << checks.size() << " checks passed\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse representation of chirp echoes: simulation, analysis and compressed sensing"};
    app.set_version_flag("--version", chirpdict::version);
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Synthesize an echo pulse from a scene config");
    s->add_option("config", sim.config, "Scene config (JSON)")->required()->check(CLI::ExistingFile);
    s->add_option("out", sim.out, "Output pulse file")->required();
    s->add_option("--snr-db", sim.snr_db, "Add complex white Gaussian noise at this SNR");
    s->add_option("--seed", sim.seed, "Noise seed");
    s->add_flag("--multitone", sim.multitone, "Transmit on every carrier listed in the config");
    s->add_flag("--gate", sim.gate, "Confine each return to its physical support");
    s->add_option("--manifest", sim.manifest, "Write the run manifest to this file");

    AnalyzeArgs ana;
    auto* an = app.add_subcommand("analyze", "Compute dictionary coefficients and a sparsity report");
    an->add_option("pulse", ana.pulse, "Pulse file")->required()->check(CLI::ExistingFile);
    an->add_option("config", ana.config, "Scene config (JSON)")->required()->check(CLI::ExistingFile);
    an->add_option("out_csv", ana.out_csv, "Coefficient CSV output")->required();
    an->add_option("--threshold", ana.threshold, "Support threshold relative to max |alpha|");
    an->add_flag("--multitone", ana.multitone, "Report expected bins for every carrier");
    an->add_option("--manifest", ana.manifest, "Write the run manifest to this file");

    CompressArgs cmp;
    auto* c = app.add_subcommand("compress", "Random projection of a pulse");
    c->add_option("pulse", cmp.pulse, "Pulse file")->required()->check(CLI::ExistingFile);
    c->add_option("config", cmp.config, "Scene config (JSON)")->required()->check(CLI::ExistingFile);
    c->add_option("out", cmp.out, "Measurement file (descriptor goes to <out>.json)")->required();
    c->add_option("--m", cmp.m, "Measurement count M")->required();
    c->add_option("--kind", cmp.kind, "gaussian | bernoulli");
    c->add_option("--seed", cmp.seed, "Sensing matrix seed");
    c->add_option("--manifest", cmp.manifest, "Write the run manifest to this file");

    ReconstructArgs rec;
    auto* r = app.add_subcommand("reconstruct", "Recover a pulse from measurements by OMP");
    r->add_option("measurements", rec.measurements, "Measurement file")->required()->check(CLI::ExistingFile);
    r->add_option("config", rec.config, "Scene config (JSON)")->required()->check(CLI::ExistingFile);
    r->add_option("out", rec.out, "Reconstructed pulse file")->required();
    r->add_option("--seed", rec.seed, "Override the descriptor's sensing seed");
    r->add_option("--kind", rec.kind, "Override the descriptor's sensing kind");
    r->add_option("--kmax", rec.k_max, "Maximum support size (default M/4)");
    r->add_option("--tol", rec.tol, "Stop when ||r|| <= tol*||y||");
    r->add_option("--original", rec.original, "Original pulse, for the relative error");
    r->add_option("--manifest", rec.manifest, "Write the run manifest to this file");

    SelftestArgs st;
    auto* t = app.add_subcommand("selftest", "Run the built-in numerical checks");
    t->add_option("--seed", st.seed, "Seed for randomized checks");
    t->add_flag("--inject-fault", st.inject_fault)->group("");
    t->add_option("--manifest", st.manifest, "Write the run manifest to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    try {
        if (s->parsed()) return cmd_simulate(sim);
        if (an->parsed()) return cmd_analyze(ana);
        if (c->parsed()) return cmd_compress(cmp);
        if (r->parsed()) return cmd_reconstruct(rec);
        if (t->parsed()) return cmd_selftest(st);
    } catch (const CheckFailed& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_check_failed;
    } catch (const ConfigError& e) {
        std::cerr << "error: invalid config: " << e.what() << '\n';
        return exit_invalid;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_invalid;
}
