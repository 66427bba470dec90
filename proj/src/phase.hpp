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

#include <cmath>
#include <complex>
#include <numbers>

namespace chirpdict::detail {

// Phases of GHz carriers over tens of microseconds reach 1e6 cycles, which
// leaves ~1e-10 rad of resolution in double and ~1e-13 rad in x87 long
// double. Phases are therefore accumulated in cycles as unevaluated sums
// hi + lo of two doubles (~106 bits) and reduced to [0, 1) before the trig
// call.
struct Cycles {
    double hi;
    double lo;
};

inline Cycles two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline Cycles two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline Cycles renorm(double hi, double lo) {
    const double s = hi + lo;
    return {s, lo - (s - hi)};
}

inline Cycles operator+(Cycles x, Cycles y) {
    const Cycles s = two_sum(x.hi, y.hi);
    return renorm(s.hi, s.lo + x.lo + y.lo);
}

inline Cycles operator-(Cycles x) { return {-x.hi, -x.lo}; }

inline Cycles operator*(Cycles x, Cycles y) {
    const Cycles p = two_prod(x.hi, y.hi);
    return renorm(p.hi, p.lo + x.hi * y.lo + x.lo * y.hi);
}

inline Cycles operator*(Cycles x, double y) {
    const Cycles p = two_prod(x.hi, y);
    return renorm(p.hi, p.lo + x.lo * y);
}

inline Cycles exact(double v) { return {v, 0.0}; }

inline std::complex<double> phasor(Cycles c) {
    double frac = c.hi - std::floor(c.hi); // exact
    frac += c.lo;
    frac -= std::floor(frac);
    const double angle = 2.0 * std::numbers::pi * frac;
    return {std::cos(angle), std::sin(angle)};
}

// Cycles of exp(j2pi[f_c*tau + gamma*tau^2/2]), tau = t - delay.
inline Cycles chirp_cycles(double carrier, double rate, double t, double delay) {
    const Cycles tau = two_sum(t, -delay);
    return tau * carrier + tau * tau * (0.5 * rate);
}

} // namespace chirpdict::detail
