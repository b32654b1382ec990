#pragma once

// Test-only oracles kept independent of the library implementation paths
// they check.

#include <cmath>
#include <functional>

#include "wrinklevar/rng.hpp"
#include "wrinklevar/state.hpp"

namespace oracles {

// Golden-section minimizer for a scalar unimodal function on [lo, hi].
inline double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                                 double tol = 1e-12) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Second-order central difference of a scalar function.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Random feasible state near a boundary-stretched configuration.
inline wrinklevar::DeformationState random_feasible_state(const wrinklevar::GridSpec& g,
                                                          const wrinklevar::BoundarySpec& bc,
                                                          std::uint64_t seed,
                                                          double h_noise = 0.01,
                                                          double w_noise = 0.01) {
    wrinklevar::DeformationState s = wrinklevar::state_from_boundary_maps(g, bc);
    wrinklevar::SplitMix64 rng(seed);
    for (int n = 0; n < g.num_nodes(); ++n) {
        s.h[n].x += h_noise * rng.uniform(-1.0, 1.0);
        s.h[n].y += h_noise * rng.uniform(-1.0, 1.0);
        s.w[n] += w_noise * rng.uniform(-1.0, 1.0);
    }
    return wrinklevar::apply_boundary(s, bc).first;
}

}  // namespace oracles
