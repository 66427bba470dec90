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

#pragma once

#include <complex>
#include <cstddef>

namespace chirpdict::detail {

// Unnormalized length-N DFT, out-of-place. sign = -1 computes
// sum_m x_m exp(-j2pi mk/N); sign = +1 the conjugate kernel.
// Construction and destruction serialize on the FFTW planner; execute() may
// be called concurrently from any number of threads.
class FftPlan {
public:
    FftPlan(std::size_t n, int sign);
    ~FftPlan();

    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    std::size_t size() const noexcept { return n_; }

    // `in` and `out` must not alias; `in` is left untouched.
    void execute(const std::complex<double>* in, std::complex<double>* out) const;

private:
    std::size_t n_;
    void* plan_;
};

} // namespace chirpdict::detail
