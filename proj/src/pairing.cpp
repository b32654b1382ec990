#include "wrinklevar/pairing.hpp"

#include <stdexcept>

namespace wrinklevar {

bool has_pairing_support(const ScalarField& testfn, const GridSpec& g) {
    detail::check_field(testfn, g, "has_pairing_support");
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const bool outer_two =
                i <= 1 || i >= g.nx - 2 || j <= 1 || j >= g.ny - 2;
            if (outer_two && testfn[g.node(i, j)] != 0.0) return false;
        }
    }
    return true;
}

double distributional_det_pairing(const Vec2Field& hfield, const ScalarField& testfn,
                                  const GridSpec& g) {
    detail::check_sized(hfield, g, "distributional_det_pairing h");
    detail::check_field(testfn, g, "distributional_det_pairing testfn");
    if (!has_pairing_support(testfn, g))
        throw std::invalid_argument(
            "distributional_det_pairing: test function must vanish on the two "
            "outermost node rings");

    const Mat2Field gh = grad_vec2(hfield, g);
    const Vec2Field gphi = grad_scalar(testfn, g);
    const double cell = g.hx() * g.hy();
    double sum = 0.0;
    for (int j = 1; j < g.ny - 1; ++j) {
        for (int i = 1; i < g.nx - 1; ++i) {
            const int n = g.node(i, j);
            const Vec2 v = matvec(transpose(cof2(gh[n])), hfield[n]);
            sum += dot(v, gphi[n]);
        }
    }
    return -0.5 * cell * sum;
}

}  // namespace wrinklevar
