#pragma once

#include <cmath>

namespace nlp::util {

// exp(-1/x) for x > 0, else 0. C-infinity at the origin.
inline double flat_exp(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// Smooth monotone step: 0 for x <= 0, 1 for x >= 1.
inline double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = flat_exp(x);
    return a / (a + flat_exp(1.0 - x));
}

}  // namespace nlp::util
