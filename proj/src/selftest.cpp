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

#include "chirpdict/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "chirpdict/dictionary.hpp"
#include "chirpdict/signal_model.hpp"
#include "chirpdict/sparsity.hpp"
#include "chirpdict/stretch.hpp"

namespace chirpdict {

namespace {

struct Setup {
    ChirpParams chirp;
    SamplingGrid grid;
    ReferenceParams ref;
};

// Desk-scale pulse with exactly `n` samples: f_s = 100 MHz, B = 0.4 f_s,
// random carrier up to 10 GHz, t_ref between 50 and 100 us.
Setup random_setup(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> carrier(0.0, 1e10);
    std::uniform_real_distribution<double> tref(50e-6, 100e-6);
    const double fs = 1e8;
    const double width = (static_cast<double>(n) - 0.5) / fs;
    const ChirpParams chirp(carrier(rng), 0.4 * fs / width, width);
    return {chirp, make_grid(chirp, fs, nullptr), ReferenceParams(tref(rng))};
}

// P scatterers in distinct on-grid bins, unit-order random amplitudes.
Scene on_grid_scene(std::mt19937_64& rng, const Setup& s, std::size_t p) {
    const auto n = static_cast<long long>(s.grid.size());
    std::vector<long long> bins(static_cast<std::size_t>(n - 1));
    std::iota(bins.begin(), bins.end(), -(n / 2 - 1));
    std::shuffle(bins.begin(), bins.end(), rng);
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    std::uniform_real_distribution<double> ang(-3.14159, 3.14159);
    const double step = s.grid.sample_rate() / (s.chirp.chirp_rate() * static_cast<double>(n));
    std::vector<Scatterer> out;
    for (std::size_t i = 0; i < p; ++i) {
        out.emplace_back(std::polar(mag(rng), ang(rng)),
                         s.ref.t_ref + static_cast<double>(bins[i]) * step);
    }
    return Scene(std::move(out));
}

Scene random_scene(std::mt19937_64& rng, const Setup& s, std::size_t p) {
    const double half = s.grid.sample_rate() / (2.0 * s.chirp.chirp_rate());
    std::uniform_real_distribution<double> offset(-half, half);
    std::uniform_real_distribution<double> mag(0.1, 3.0);
    std::uniform_real_distribution<double> ang(-3.14159, 3.14159);
    std::vector<Scatterer> out;
    for (std::size_t i = 0; i < p; ++i) {
        out.emplace_back(std::polar(mag(rng), ang(rng)), s.ref.t_ref + offset(rng));
    }
    return Scene(std::move(out));
}

Dictionary dictionary_for(const Setup& s, bool corrupt) {
    const ComplexSignal ref = synth_reference(s.chirp, s.ref, s.grid);
    if (!corrupt) {
        return Dictionary(ref);
    }
    std::vector<cdouble> bad(ref.samples().begin(), ref.samples().end());
    bad[bad.size() / 2] *= 2.0;
    return Dictionary::unchecked(ComplexSignal(ref.grid(), std::move(bad)));
}

SelftestCheck below(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, value < threshold};
}

} // namespace

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options) {
    std::mt19937_64 rng(options.seed);
    std::vector<SelftestCheck> checks;

    for (std::size_t n : {64u, 256u, 1024u}) {
        const Setup s = random_setup(rng, n);
        const double defect = orthogonality_defect(dictionary_for(s, options.inject_fault));
        checks.push_back(below("orthogonality N=" + std::to_string(n), defect, 1e-10));
    }

    {
        double worst = 0.0;
        std::uniform_int_distribution<std::size_t> count(1, 10);
        for (int trial = 0; trial < 20; ++trial) {
            const Setup s = random_setup(rng, 512);
            const Scene scene = random_scene(rng, s, count(rng));
            const ComplexSignal a = dechirp(synth_echo(scene, s.chirp, s.grid),
                                            synth_reference(s.chirp, s.ref, s.grid));
            const ComplexSignal b = if_closed_form(scene, s.chirp, s.ref, s.grid);
            double peak = 0.0;
            double err = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                peak = std::max(peak, std::abs(b[i]));
                err = std::max(err, std::abs(a[i] - b[i]));
            }
            worst = std::max(worst, err / peak);
        }
        checks.push_back(below("dechirp vs closed form (relative)", worst, 1e-12));
    }

    for (std::size_t n : {64u, 257u, 512u}) {
        const Setup s = random_setup(rng, n);
        const Dictionary dict = dictionary_for(s, options.inject_fault);
        const Eigen::MatrixXcd d = materialize(dict);
        std::normal_distribution<double> g(0.0, 1.0);
        Eigen::VectorXcd x(d.rows());
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            x(i) = {g(rng), g(rng)};
        }
        const auto fast_syn = dict.synthesize({x.data(), n});
        const auto fast_ana = dict.analyze({x.data(), n});
        const Eigen::VectorXcd dense_syn = d * x;
        const Eigen::VectorXcd dense_ana = d.adjoint() * x;
        double err = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            err = std::max({err, std::abs(fast_syn[i] - dense_syn(i)), std::abs(fast_ana[i] - dense_ana(i))});
        }
        checks.push_back(below("operator vs matrix N=" + std::to_string(n), err, 1e-10));
    }

    {
        double worst_leak = 0.0;
        double worst_peak = 0.0;
        std::size_t bin_errors = 0;
        std::uniform_int_distribution<std::size_t> count(1, 10);
        for (int trial = 0; trial < 20; ++trial) {
            const Setup s = random_setup(rng, 256);
            const Scene scene = on_grid_scene(rng, s, count(rng));
            const Dictionary dict = dictionary_for(s, false);
            const SparseCoefficients a = analyze(dict, synth_echo(scene, s.chirp, s.grid));
            double total = 0.0;
            for (const auto& z : a.alpha) {
                total += std::norm(z);
            }
            double kept = 0.0;
            for (const auto& sc : scene.scatterers()) {
                const std::size_t k = expected_bin(sc.delay, s.ref, s.chirp, s.grid);
                kept += std::norm(a.alpha[k]);
                const double want = std::abs(sc.amplitude) * std::sqrt(256.0);
                worst_peak = std::max(worst_peak, std::abs(std::abs(a.alpha[k]) - want) / want);
            }
            worst_leak = std::max(worst_leak, 1.0 - kept / total);
            const SparsityReport rep = sparsity_report(a, 1e-6);
            if (rep.support_size != scene.size()) {
                ++bin_errors;
            }
        }
        checks.push_back(below("on-grid energy outside expected bins", worst_leak, 1e-9));
        checks.push_back(below("on-grid peak magnitude (relative)", worst_peak, 1e-9));
        checks.push_back({"on-grid support size mismatches", static_cast<double>(bin_errors), 0.0,
                          bin_errors == 0});
    }

    {
        const Setup s = random_setup(rng, 256);
        // Scatterers in bins 10 and 40; the second carrier sits 5 bins higher,
        // shifting its tones to bins 5 and 35.
        const double step = s.grid.sample_rate() / (s.chirp.chirp_rate() * 256.0);
        const Scene scene({Scatterer(1.0, s.ref.t_ref + 10.0 * step),
                           Scatterer(cdouble(0.0, 0.7), s.ref.t_ref + 40.0 * step)});
        const double offset = 5.0 * s.grid.sample_rate() / 256.0;
        const CarrierSet carriers({s.chirp.carrier(), s.chirp.carrier() + offset});
        const Dictionary dict = dictionary_for(s, false);
        const SparseCoefficients a =
            analyze(dict, synth_echo_multitone(scene, carriers, s.chirp, s.grid));
        const SparsityReport rep = sparsity_report(a, 1e-6);
        checks.push_back({"multitone active bins (K*P = 4)", static_cast<double>(rep.support_size),
                          4.0, rep.support_size == 4});
        checks.push_back(below("multitone energy outside support", 1.0 - rep.energy_fraction, 1e-9));
    }

    {
        const double bandwidth = 1e9;
        const double width = 50e-6;
        const double fs = 2e9;
        const ChirpParams chirp(1e10, bandwidth / width, width);
        const double half = fs / (2.0 * chirp.chirp_rate());
        checks.push_back(below("t_ref half-width - T", std::abs(half - width), 1e-18));

        std::size_t disagreements = 0;
        std::uniform_real_distribution<double> delay(90e-6, 110e-6);
        std::uniform_real_distribution<double> tref(0.0, 200e-6);
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<Scatterer> sc;
            for (int i = 0; i < 3; ++i) {
                sc.emplace_back(1.0, delay(rng));
            }
            const Scene scene(std::move(sc));
            const ReferenceParams ref(tref(rng));
            const TrefInterval iv = valid_tref_interval(scene, chirp, fs);
            if (iv.contains(ref.t_ref) != check_aliasing(scene, chirp, ref, fs).ok) {
                ++disagreements;
            }
        }
        checks.push_back({"aliasing check vs t_ref interval disagreements",
                          static_cast<double>(disagreements), 0.0, disagreements == 0});
    }

    return checks;
}

} // namespace chirpdict
