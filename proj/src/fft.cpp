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

#include "fft.hpp"

#include <fftw3.h>

#include <limits>
#include <mutex>
#include <stdexcept>

namespace chirpdict::detail {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

FftPlan::FftPlan(std::size_t n, int sign) : n_(n), plan_(nullptr) {
    if (n == 0 || n > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
        throw std::invalid_argument("FFT length out of range");
    }
    std::lock_guard lock(planner_mutex());
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    // FFTW_UNALIGNED lets execute() run on std::vector storage.
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    fftw_free(in);
    fftw_free(out);
    if (plan_ == nullptr) {
        throw std::runtime_error("FFTW failed to create a plan");
    }
}

FftPlan::~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void FftPlan::execute(const std::complex<double>* in, std::complex<double>* out) const {
    // std::complex<double> is layout-compatible with fftw_complex.
    fftw_execute_dft(static_cast<fftw_plan>(plan_),
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace chirpdict::detail
