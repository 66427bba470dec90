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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "chirpdict/errors.hpp"
#include "chirpdict/sparsity.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace chirpdict;

TEST_CASE("make_range_grid")
{
    const RangeGrid g = make_range_grid(0.0, 100.0, 1e9);
    CHECK(g.resolution == Catch::Approx(0.149896229).epsilon(1e-15));

    const RangeGrid exact = make_range_grid(0.0, 10.0 * g.resolution, 1e9);
    CHECK(exact.count == 10);

    const RangeGrid window = make_range_grid(10e3, 10.01e3, 1e9);
    CHECK(window.count == 66);
    CHECK(window.bin_start(0) == 10e3);
    CHECK(window.bin_start(1) == Catch::Approx(10e3 + 0.149896229));
    const double span = window.high - window.low;
    CHECK(static_cast<double>(window.count) * window.resolution <= span);
    CHECK(span < static_cast<double>(window.count + 1) * window.resolution);

    CHECK_THROWS_AS(make_range_grid(10.0, 5.0, 1e9), InvalidParameter);
    CHECK_THROWS_AS(make_range_grid(10.0, 10.0, 1e9), InvalidParameter);
    CHECK_THROWS_AS(make_range_grid(0.0, 5.0, 0.0), InvalidParameter);
}

TEST_CASE("make_range_grid - inequality over random windows")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> low(0.0, 1e5);
    std::uniform_real_distribution<double> span(1e-3, 1e3);
    std::uniform_real_distribution<double> bw(1e6, 4e9);
    for (int trial = 0; trial < 2000; ++trial) {
        const double l = low(rng);
        const RangeGrid g = make_range_grid(l, l + span(rng), bw(rng));
        const double s = g.high - g.low;
        REQUIRE(static_cast<double>(g.count) * g.resolution <= s);
        REQUIRE(s < static_cast<double>(g.count + 1) * g.resolution);
    }
}

TEST_CASE("delay/range conversion")
{
    CHECK(delay_of_range(0.0) == 0.0);
    CHECK(delay_of_range(149896.229) == Catch::Approx(1e-3).epsilon(1e-15));
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> r(0.0, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = r(rng);
        REQUIRE(std::abs(range_of_delay(delay_of_range(x)) - x) <= 1e-12 * x);
    }
    CHECK_THROWS_AS(delay_of_range(-1.0), InvalidParameter);
    CHECK_THROWS_AS(range_of_delay(-1e-9), InvalidParameter);
}

TEST_CASE("expected_bin")
{
    std::mt19937_64 rng(43);
    const auto s = gen::setup(rng, 200);
    CHECK(expected_bin(s.ref.t_ref, s.ref, s.chirp, s.grid) == 0);

    for (long long k : {10LL, -3LL}) {
        const double delay = s.ref.t_ref + static_cast<double>(k) * s.bin_step();
        const ComplexSignal x = if_closed_form(Scene({Scatterer(1.0, delay)}), s.chirp, s.ref, s.grid);
        const std::size_t want = oracle::argmax_abs(oracle::dft_coefficients(x.samples()));
        CHECK(want == gen::wrap_bin(k, 200));
        CHECK(expected_bin(delay, s.ref, s.chirp, s.grid) == want);
    }
    CHECK(expected_bin(s.ref.t_ref - 3.0 * s.bin_step(), s.ref, s.chirp, s.grid) == 197);

    const double half = s.grid.sample_rate() / (2.0 * s.chirp.chirp_rate());
    CHECK_NOTHROW(expected_bin(s.ref.t_ref + 0.999 * half, s.ref, s.chirp, s.grid));
    CHECK_THROWS_AS(expected_bin(s.ref.t_ref + 1.01 * half, s.ref, s.chirp, s.grid), AliasingViolation);
}

TEST_CASE("snap_scene_to_grid")
{
    std::mt19937_64 rng(44);
    const auto s = gen::setup(rng, 256);

    const Scene on = gen::on_grid_scene(rng, s, 4);
    const Scene again = snap_scene_to_grid(on, s.ref, s.chirp, s.grid);
    for (std::size_t i = 0; i < on.size(); ++i) {
        CHECK(std::abs(again[i].delay - on[i].delay) <= 1e-12 * on[i].delay);
        CHECK(again[i].amplitude == on[i].amplitude);
    }

    const Scene off({Scatterer(1.0, s.ref.t_ref + 10.4 * s.bin_step())});
    const Scene snapped = snap_scene_to_grid(off, s.ref, s.chirp, s.grid);
    CHECK(snapped[0].delay == Catch::Approx(s.ref.t_ref + 10.0 * s.bin_step()).epsilon(1e-14));

    const Dictionary d = build_dictionary(synth_reference(s.chirp, s.ref, s.grid));
    const Scene random = gen::scene(rng, s, 6);
    const Scene rs = snap_scene_to_grid(random, s.ref, s.chirp, s.grid);
    std::set<std::size_t> bins;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        CHECK(std::abs(rs[i].delay - random[i].delay) <= 0.5 * s.bin_step() * (1.0 + 1e-9));
        bins.insert(expected_bin(rs[i].delay, s.ref, s.chirp, s.grid));
    }
    const SparsityReport rep = sparsity_report(analyze(d, synth_echo(rs, s.chirp, s.grid)), 1e-6);
    // Scatterers that snap into one bin merge; unless their amplitudes cancel,
    // support equals the number of distinct bins.
    CHECK(rep.support_size == bins.size());
}

TEST_CASE("sparsity_report")
{
    SECTION("unit impulse")
    {
        const SparsityReport rep = sparsity_report(SparseCoefficients::unit(16, 5));
        CHECK(rep.support == std::vector<std::size_t>{5});
        CHECK(rep.support_size == 1);
        CHECK(rep.energy_fraction == 1.0);
        CHECK(rep.top_bins == std::vector<std::size_t>{5});
    }
    SECTION("zero vector")
    {
        const SparsityReport rep = sparsity_report(SparseCoefficients{std::vector<cdouble>(8), {}});
        CHECK(rep.support.empty());
        CHECK(rep.energy_fraction == 0.0);
    }
    SECTION("ranking and threshold")
    {
        SparseCoefficients a{std::vector<cdouble>(6), {}};
        a.alpha[0] = 1e-3;
        a.alpha[2] = {0.0, -4.0};
        a.alpha[4] = 2.0;
        a.alpha[5] = 1e-8;
        const SparsityReport rep = sparsity_report(a, 1e-4);
        CHECK(rep.support == std::vector<std::size_t>{0, 2, 4});
        CHECK(rep.top_bins == std::vector<std::size_t>{2, 4, 0});
        CHECK(rep.energy_fraction == Catch::Approx((16.0 + 4.0 + 1e-6) / (16.0 + 4.0 + 1e-6 + 1e-16)));
        CHECK_THROWS_AS(sparsity_report(a, 0.0), InvalidParameter);
        CHECK_THROWS_AS(sparsity_report(a, 1.0), InvalidParameter);
    }
    SECTION("scale invariance")
    {
        std::mt19937_64 rng(45);
        const auto s = gen::setup(rng, 128);
        const Scene scene = gen::scene(rng, s, 5);
        const Dictionary d = build_dictionary(synth_reference(s.chirp, s.ref, s.grid));
        SparseCoefficients a = analyze(d, synth_echo(scene, s.chirp, s.grid));
        const SparsityReport r1 = sparsity_report(a, 1e-3);
        for (auto& z : a.alpha) {
            z *= 1e6;
        }
        const SparsityReport r2 = sparsity_report(a, 1e-3);
        CHECK(r1.support == r2.support);
    }
}

TEST_CASE("on-grid P = 3 scene and cancelling pair")
{
    std::mt19937_64 rng(46);
    const auto s = gen::setup(rng, 256);
    const Dictionary d = build_dictionary(synth_reference(s.chirp, s.ref, s.grid));

    const Scene three = gen::on_grid_scene(s, {-50, 3, 90}, {1.0, cdouble(0.0, 2.0), -0.5});
    const SparsityReport rep = sparsity_report(analyze(d, synth_echo(three, s.chirp, s.grid)));
    CHECK(rep.support_size == 3);
    CHECK(rep.energy_fraction >= 1.0 - 1e-9);
    CHECK(rep.support == std::vector<std::size_t>{3, 90, 206});

    const double delay = s.ref.t_ref + 12.0 * s.bin_step();
    const Scene pair({Scatterer(1.0, delay), Scatterer(-1.0, delay)});
    CHECK(sparsity_report(analyze(d, synth_echo(pair, s.chirp, s.grid))).support_size <= 1);
}

TEST_CASE("two-step translation: argmax bins equal expected bins")
{
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<std::size_t> count(1, 10);
    for (int trial = 0; trial < 40; ++trial) {
        const auto s = gen::setup(rng, 256);
        const Scene scene = gen::on_grid_scene(rng, s, count(rng));
        const Dictionary d = build_dictionary(synth_reference(s.chirp, s.ref, s.grid));
        const SparseCoefficients a = analyze(d, synth_echo(scene, s.chirp, s.grid));
        std::vector<std::size_t> want;
        for (const auto& sc : scene.scatterers()) {
            want.push_back(expected_bin(sc.delay, s.ref, s.chirp, s.grid));
        }
        std::sort(want.begin(), want.end());
        std::vector<std::size_t> idx(a.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::partial_sort(idx.begin(), idx.begin() + static_cast<long>(scene.size()), idx.end(),
                          [&](std::size_t i, std::size_t j) { return std::abs(a.alpha[i]) > std::abs(a.alpha[j]); });
        std::vector<std::size_t> got(idx.begin(), idx.begin() + static_cast<long>(scene.size()));
        std::sort(got.begin(), got.end());
        CHECK(got == want);
    }
}

TEST_CASE("off-grid leakage matches the brute-force spectrum")
{
    std::mt19937_64 rng(48);
    std::uniform_real_distribution<double> frac(-0.45, 0.45);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = gen::setup(rng, 128);
        const double shift = 20.0 + frac(rng);
        const Scene scene({Scatterer(gen::amplitude(rng), s.ref.t_ref + shift * s.bin_step())});
        const ComplexSignal ref = synth_reference(s.chirp, s.ref, s.grid);
        const ComplexSignal echo = synth_echo(scene, s.chirp, s.grid);
        const SparseCoefficients a = analyze(build_dictionary(ref), echo);
        const auto brute = oracle::dft_coefficients(echo.samples(), ref.samples());

        const std::size_t k = expected_bin(scene[0].delay, s.ref, s.chirp, s.grid);
        CHECK(oracle::argmax_abs(a.alpha) == k);
        auto three = [&](const std::vector<cdouble>& v) {
            return std::norm(v[k - 1]) + std::norm(v[k]) + std::norm(v[k + 1]);
        };
        CHECK(three(a.alpha) >= three(brute) - 1e-9);
        CHECK(three(a.alpha) < oracle::energy(a.alpha)); // off-grid energy does leak
    }
}

TEST_CASE("adjacent range cells map to adjacent coefficient bins")
{
    // f_s T = N - 1: tone spacing f_s/N ~ 1/T, delay spacing ~ 1/B, range c/(2B).
    const double fs = 1e8;
    const std::size_t n = 512;
    const double width = static_cast<double>(n - 1) / fs;
    const ChirpParams chirp(9e9, 0.45 * fs / width, width);
    const SamplingGrid grid = make_grid(chirp, fs, nullptr);
    REQUIRE(grid.size() == n);
    const ReferenceParams ref(delay_of_range(10e3));
    const RangeGrid cells = make_range_grid(10e3 - 50.0, 10e3 + 50.0, chirp.bandwidth());
    std::size_t prev = expected_bin(delay_of_range(cells.bin_start(0)), ref, chirp, grid);
    for (std::size_t i = 1; i < cells.count; ++i) {
        const std::size_t k = expected_bin(delay_of_range(cells.bin_start(i)), ref, chirp, grid);
        // bins increase by one per cell (mod N); ratio N/(N-1) rounds to 1
        const std::size_t step = (k + n - prev) % n;
        CHECK((step == 1 || step == 2));
        prev = k;
    }
    const std::size_t first = expected_bin(delay_of_range(cells.bin_start(0)), ref, chirp, grid);
    const std::size_t last = expected_bin(delay_of_range(cells.bin_start(cells.count - 1)), ref, chirp, grid);
    const double cells_spanned = static_cast<double>(cells.count - 1);
    const double bins_spanned = static_cast<double>((last + n - first) % n);
    CHECK(std::abs(bins_spanned - cells_spanned * static_cast<double>(n) / static_cast<double>(n - 1)) <= 1.0);
}
