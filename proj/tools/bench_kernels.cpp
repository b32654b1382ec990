// Times the OpenMP assembly and sampling kernels against the serial
// reference implementations on a few grid sizes.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wrinklevar/energy.hpp"
#include "wrinklevar/hypotheses.hpp"
#include "wrinklevar/minimize.hpp"

using namespace wrinklevar;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

DeformationState wavy_state(const GridSpec& g) {
    DeformationState s = DeformationState::reference(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x1 = g.x1(i), x2 = g.x2(j);
            const int n = g.node(i, j);
            s.h[n].x += 0.05 * std::sin(3.0 * x1) * std::cos(2.0 * x2);
            s.h[n].y += 0.05 * std::cos(2.0 * x1) * std::sin(3.0 * x2);
            s.w[n] = 0.02 * std::sin(5.0 * x1) * std::sin(4.0 * x2);
        }
    }
    return s;
}

template <class Fn>
double time_best_of(int reps, const Fn& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        fn();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
    const MaterialParams params;
    std::printf("%-28s %12s %12s %8s\n", "kernel", "parallel[s]", "serial[s]", "speedup");

    for (const int n : {128, 256, 512}) {
        const GridSpec g{2 * n, n, 2.0, 1.0};
        const DeformationState s = wavy_state(g);
        const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.0);
        const LoadSpec loads = LoadSpec::zero(g);

        volatile double sink = 0.0;
        const double tp_e = time_best_of(3, [&] { sink = assemble_energy(s, params, loads, bc).total; });
        const double ts_e =
            time_best_of(3, [&] { sink = assemble_energy_serial(s, params, loads, bc).total; });
        std::printf("%-28s %12.6f %12.6f %8.2f\n",
                    ("assemble_energy " + std::to_string(2 * n) + "x" + std::to_string(n)).c_str(),
                    tp_e, ts_e, ts_e / tp_e);

        const double tp_g = time_best_of(3, [&] { sink = assemble_gradient(s, params, loads, bc)[0]; });
        const double ts_g =
            time_best_of(3, [&] { sink = assemble_gradient_serial(s, params, loads, bc)[0]; });
        std::printf("%-28s %12.6f %12.6f %8.2f\n",
                    ("assemble_gradient " + std::to_string(2 * n) + "x" + std::to_string(n)).c_str(),
                    tp_g, ts_g, ts_g / tp_g);
        (void)sink;
    }

    {
        SampleBox box;
        box.samples = 2000000;
        const double tp = time_best_of(3, [&] { check_convexity_H1(params, box); });
#ifdef _OPENMP
        const int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        const double ts = time_best_of(3, [&] { check_convexity_H1(params, box); });
        omp_set_num_threads(saved);
#else
        const double ts = tp;
#endif
        std::printf("%-28s %12.6f %12.6f %8.2f\n", "H1 sampling (2e6)", tp, ts, ts / tp);
    }
    return 0;
}
