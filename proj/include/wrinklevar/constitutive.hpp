#pragma once

#include "wrinklevar/tensors.hpp"

// Energy density of the wrinkling model: an incompressible Mooney-Rivlin
// membrane plus a von Karman bending quadratic. Two views of the same
// membrane form coexist:
//  - gamma(K, F, J) treats (K, F, J) as independent arguments. It is the
//    convex representative whose structural properties (convexity, growth,
//    blow-up as J -> 0) the verification harness certifies.
//  - total_density(K, F) evaluates gamma with J = sqrt(det F^T F), i.e. the
//    membrane is the full spatial Mooney-Rivlin density in C = F^T F. This
//    is the density the minimizer descends. Its loss of rank-one convexity
//    in the out-of-plane direction is what lets stretched sheets trade
//    membrane compression for bending and wrinkle; replacing J here by
//    det grad h would convexify the density and suppress wrinkling
//    entirely (the flat sheet would minimize at every stretch).

namespace wrinklevar {

struct MaterialParams {
    double c1 = 1.0;                  // membrane modulus
    double c2 = 0.1;                  // Mooney correction modulus
    double bending_stiffness = 1e-3;  // von Karman plate stiffness
    double nu = 0.3;                  // Poisson ratio

    // Throws std::invalid_argument outside the admissible regime
    // (c1 > 0, c2 >= 0, D > 0, 0 <= nu < 1, c2 < 3 c1).
    void validate() const;
};

// Coercivity constants: density >= C1 (|K|^p + |F|^q + J^r) + C2 pointwise.
struct GrowthConstants {
    double C1 = 0.0;
    double C2 = 0.0;
    double p = 2.0;
    double q = 2.0;
    double r = 2.0;

    void validate() const;  // p > 1, q > 4/3, r > 1, p > 2q/(2+q) for q >= 2
};

struct GammaDerivatives {
    SymMat2 dK;
    Mat32 dF;
    double dJ = 0.0;
};

struct TotalDerivatives {
    SymMat2 wK;
    Mat32 wF;
};

// (D/2) [nu (tr K)^2 + (1-nu) |K|^2]; always nonnegative.
double bending_energy(const SymMat2& k, const MaterialParams& p);

// c1 (|F|^2 + J^-2 - 3) + c2 (J^2 + |F|^2 J^-2 - 3). Requires J > 0;
// throws std::domain_error otherwise (the barrier is never evaluated past
// the pole). Zero at the reference state F = embedded identity, J = 1.
double membrane_energy(const Mat32& f, double j, const MaterialParams& p);

// The convex representative: bending_energy(K) + membrane_energy(F, J).
double gamma_density(const SymMat2& k, const Mat32& f, double j, const MaterialParams& p);

// Membrane energy as a function of spatial F alone, with the exact area
// ratio sqrt(det F^T F). Equals membrane_energy(grad h, det grad h) on
// planar configurations.
double spatial_membrane_energy(const Mat32& f, const MaterialParams& p);

// d sqrt(det F^T F) / dF = J F (F^T F)^-1.
Mat32 exact_area_ratio_derivative(const Mat32& f);

// bending_energy(K) + spatial_membrane_energy(F). Requires an
// orientation-preserving planar block (det grad h > 0), matching the
// admissible set; the membrane itself blows up as det F^T F -> 0.
double total_density(const SymMat2& k, const Mat32& f, const MaterialParams& p);

// Analytic partials of gamma with respect to K, F and independent J.
GammaDerivatives gamma_derivatives(const SymMat2& k, const Mat32& f, double j,
                                   const MaterialParams& p);

// Partials of total_density: W_K = dgamma/dK and W_F = dgamma/dF plus the
// chain-rule term dgamma/dJ * dJ/dF through the exact area ratio. On planar
// configurations the chain term reduces to dgamma/dJ * cof(grad h) on the
// top block.
TotalDerivatives total_derivatives(const SymMat2& k, const Mat32& f, const MaterialParams& p);

// p = q = r = 2 with C1 = min(D(1-nu)/2, c1, c2), C2 = -3(c1+c2).
// Throws std::domain_error for c2 = 0 (the J^r term has no coefficient).
GrowthConstants derive_growth_constants(const MaterialParams& p);

}  // namespace wrinklevar
