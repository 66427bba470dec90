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

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "chirpdict/dictionary.hpp"
#include "chirpdict/errors.hpp"
#include "chirpdict/sparsity.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace chirpdict;

namespace {

std::vector<cdouble> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cdouble> v(n);
    for (auto& z : v) {
        z = {g(rng), g(rng)};
    }
    return v;
}

Dictionary random_dictionary(std::mt19937_64& rng, std::size_t n) {
    const auto s = gen::setup(rng, n);
    return build_dictionary(synth_reference(s.chirp, s.ref, s.grid));
}

// f_c = 0, gamma ~ 0, t_ref = 0: all-ones reference.
SamplingGrid flat_grid(std::size_t n, ChirpParams& chirp) {
    chirp = ChirpParams(0.0, 1e-300, 1.0);
    return make_grid(chirp, static_cast<double>(n) - 0.5, nullptr);
}

} // namespace

TEST_CASE("build_dictionary - small cases")
{
    SECTION("N = 1")
    {
        const ChirpParams c(1e3, 1.0, 0.5);
        const SamplingGrid g = make_grid(c, 1.0, nullptr);
        REQUIRE(g.size() == 1);
        const ComplexSignal ref = synth_reference(c, ReferenceParams(0.1), g);
        const Dictionary d = build_dictionary(ref);
        const Eigen::MatrixXcd m = materialize(d);
        REQUIRE(m.rows() == 1);
        CHECK(std::abs(m(0, 0) - ref[0]) < 1e-15);
        CHECK(orthogonality_defect(d) < 1e-15);
    }
    SECTION("N = 4 with flat reference is the unitary DFT")
    {
        ChirpParams c(0.0, 1.0, 1.0);
        const SamplingGrid g = flat_grid(4, c);
        const Dictionary d = build_dictionary(synth_reference(c, ReferenceParams(0.0), g));
        const Eigen::MatrixXcd m = materialize(d);
        for (int r = 0; r < 4; ++r) {
            for (int k = 0; k < 4; ++k) {
                const cdouble want = 0.5 * oracle::expj(-static_cast<long double>(r * k) / 4.0L);
                CHECK(std::abs(m(r, k) - want) < 1e-15);
            }
        }
    }
    SECTION("non-unit reference is rejected")
    {
        const ChirpParams c(0.0, 1.0, 1.0);
        const SamplingGrid g = make_grid(c, 7.5, nullptr);
        std::vector<cdouble> bad(g.size(), cdouble(1.0, 0.0));
        bad[3] = 1.0 + 1e-8;
        CHECK_THROWS_AS(build_dictionary(ComplexSignal(g, bad)), InvalidParameter);
        bad[3] = 1.0 + 1e-10;
        CHECK_NOTHROW(build_dictionary(ComplexSignal(g, bad)));
    }
}

TEST_CASE("orthogonality_defect")
{
    std::mt19937_64 rng(31);
    for (std::size_t n : {64u, 256u, 1024u}) {
        CHECK(orthogonality_defect(random_dictionary(rng, n)) < 1e-10);
    }

    const Dictionary d = random_dictionary(rng, 64);
    const Eigen::MatrixXcd m = materialize(d);
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
        CHECK(std::abs(m.col(k).norm() - 1.0) < 1e-13);
    }

    // One diagonal entry of modulus 2: Phi^H Phi is off by |2|^2 - 1 = 3 in
    // that entry, and D^H D = Psi^H (Phi^H Phi) Psi spreads it as 3/N over
    // every Gram entry (|Psi_mk|^2 = 1/N).
    std::vector<cdouble> bad(d.phase().begin(), d.phase().end());
    bad[10] *= 2.0;
    double phi_defect = 0.0;
    for (const auto& z : bad) {
        phi_defect = std::max(phi_defect, std::abs(std::norm(z) - 1.0));
    }
    CHECK(phi_defect == Catch::Approx(3.0).epsilon(1e-12));
    const Dictionary broken = Dictionary::unchecked(ComplexSignal(d.grid(), bad));
    CHECK(orthogonality_defect(broken) == Catch::Approx(3.0 / 64.0).epsilon(1e-10));
}

TEST_CASE("materialize - cap and column identity")
{
    std::mt19937_64 rng(32);
    const Dictionary d = random_dictionary(rng, 40);
    CHECK_THROWS_AS(materialize(d, 39), InvalidParameter);
    const Eigen::MatrixXcd m = materialize(d, 40);
    for (std::size_t k = 0; k < 40; ++k) {
        const ComplexSignal col = synthesize(d, SparseCoefficients::unit(40, k));
        for (std::size_t r = 0; r < 40; ++r) {
            REQUIRE(std::abs(col[r] - m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k))) < 1e-14);
        }
    }
}

TEST_CASE("synthesize")
{
    std::mt19937_64 rng(33);
    const Dictionary d = random_dictionary(rng, 128);

    CHECK(synthesize(d, SparseCoefficients{std::vector<cdouble>(128), {}}).norm() == 0.0);

    SECTION("unit impulse with flat reference is a DFT column")
    {
        ChirpParams c(0.0, 1.0, 1.0);
        const SamplingGrid g = flat_grid(32, c);
        const Dictionary flat = build_dictionary(synth_reference(c, ReferenceParams(0.0), g));
        const ComplexSignal col = synthesize(flat, SparseCoefficients::unit(32, 5));
        for (std::size_t m = 0; m < 32; ++m) {
            const cdouble want = oracle::expj(-static_cast<long double>((5 * m) % 32) / 32.0L) / std::sqrt(32.0);
            CHECK(std::abs(col[m] - want) < 1e-15);
            CHECK(std::abs(std::abs(col[m]) - 1.0 / std::sqrt(32.0)) < 1e-15);
        }
    }
    SECTION("random alpha matches dense product")
    {
        const auto alpha = random_vector(rng, 128);
        const Eigen::MatrixXcd m = materialize(d);
        const Eigen::VectorXcd dense = m * Eigen::Map<const Eigen::VectorXcd>(alpha.data(), 128);
        const auto fast = d.synthesize(alpha);
        CHECK(oracle::max_abs_diff(fast, std::vector<cdouble>(dense.data(), dense.data() + 128)) < 1e-10);
    }
    CHECK_THROWS_AS(d.synthesize(std::vector<cdouble>(127)), DimensionMismatch);
}

TEST_CASE("analyze")
{
    std::mt19937_64 rng(34);
    const Dictionary d = random_dictionary(rng, 256);

    const auto alpha = random_vector(rng, 256);
    const auto back = d.analyze(d.synthesize(alpha));
    CHECK(oracle::max_abs_diff(back, alpha) < 1e-10);

    CHECK(analyze(d, ComplexSignal::zeros(d.grid())).norm() == 0.0);
    CHECK_THROWS_AS(d.analyze(std::vector<cdouble>(255)), DimensionMismatch);
}

TEST_CASE("analyze - single on-grid scatterer")
{
    std::mt19937_64 rng(35);
    const auto s = gen::setup(rng, 256);
    const Scene scene({Scatterer(1.0, s.ref.t_ref + 37.0 * s.bin_step())});
    const ComplexSignal ref = synth_reference(s.chirp, s.ref, s.grid);
    const ComplexSignal echo = synth_echo(scene, s.chirp, s.grid);
    const SparseCoefficients a = analyze(build_dictionary(ref), echo);

    const auto want = oracle::dft_coefficients(echo.samples(), ref.samples());
    REQUIRE(oracle::argmax_abs(want) == 37);
    CHECK(std::abs(want[37]) == Catch::Approx(16.0).epsilon(1e-9));

    CHECK(oracle::argmax_abs(a.alpha) == 37);
    CHECK(std::abs(a.alpha[37]) == Catch::Approx(16.0).epsilon(1e-12));
    for (std::size_t k = 0; k < 256; ++k) {
        if (k != 37) {
            CHECK(std::abs(a.alpha[k]) < 1e-9);
        }
    }
}

TEST_CASE("Parseval and operator/matrix equivalence")
{
    std::mt19937_64 rng(36);
    for (std::size_t n : {1u, 2u, 3u, 64u, 97u, 128u, 257u, 500u, 512u}) {
        const Dictionary d = random_dictionary(rng, n);
        const auto x = random_vector(rng, n);
        const auto a = d.analyze(x);
        CHECK(std::abs(oracle::energy(a) - oracle::energy(x)) < 1e-10 * oracle::energy(x));

        const Eigen::MatrixXcd m = materialize(d);
        const Eigen::Map<const Eigen::VectorXcd> xv(x.data(), static_cast<Eigen::Index>(n));
        const Eigen::VectorXcd ana = m.adjoint() * xv;
        const Eigen::VectorXcd syn = m * xv;
        CHECK(oracle::max_abs_diff(a, std::vector<cdouble>(ana.data(), ana.data() + n)) < 1e-10);
        const auto fs = d.synthesize(x);
        CHECK(oracle::max_abs_diff(fs, std::vector<cdouble>(syn.data(), syn.data() + n)) < 1e-10);
    }
}

TEST_CASE("on-grid scenes occupy exactly P bins")
{
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<std::size_t> count(1, 10);
    for (int trial = 0; trial < 30; ++trial) {
        const auto s = gen::setup(rng, 256);
        const std::size_t p = count(rng);
        const Scene scene = gen::on_grid_scene(rng, s, p);
        const Dictionary d = build_dictionary(synth_reference(s.chirp, s.ref, s.grid));
        const SparseCoefficients a = analyze(d, synth_echo(scene, s.chirp, s.grid));
        double kept = 0.0;
        for (const auto& sc : scene.scatterers()) {
            const std::size_t k = expected_bin(sc.delay, s.ref, s.chirp, s.grid);
            kept += std::norm(a.alpha[k]);
            CHECK(std::abs(std::abs(a.alpha[k]) - 16.0 * std::abs(sc.amplitude)) <
                  1e-9 * 16.0 * std::abs(sc.amplitude));
        }
        CHECK(kept >= (1.0 - 1e-9) * oracle::energy(a.alpha));
        CHECK(std::abs(a.norm() - synth_echo(scene, s.chirp, s.grid).norm()) < 1e-10 * a.norm());
    }
}

TEST_CASE("Dictionary is shareable across threads")
{
    std::mt19937_64 rng(38);
    const Dictionary d = random_dictionary(rng, 1000);
    const auto x = random_vector(rng, 1000);
    const auto want = d.analyze(x);
    std::vector<double> errs(8, 1.0);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < errs.size(); ++t) {
        pool.emplace_back([&, t] {
            double e = 0.0;
            for (int rep = 0; rep < 50; ++rep) {
                e = std::max(e, oracle::max_abs_diff(d.analyze(x), want));
                e = std::max(e, oracle::max_abs_diff(d.analyze(d.synthesize(want)), want) > 1e-10 ? 1.0 : 0.0);
            }
            errs[t] = e;
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    for (double e : errs) {
        CHECK(e == 0.0);
    }
}
