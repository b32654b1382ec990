#include "wrinklevar/constitutive.hpp"

#include <algorithm>
#include <stdexcept>

namespace wrinklevar {

void MaterialParams::validate() const {
    if (!(c1 > 0.0)) throw std::invalid_argument("material.c1 must be > 0");
    if (!(c2 >= 0.0)) throw std::invalid_argument("material.c2 must be >= 0");
    if (!(bending_stiffness > 0.0)) throw std::invalid_argument("material.d must be > 0");
    if (!(nu >= 0.0 && nu < 1.0)) throw std::invalid_argument("material.nu must lie in [0, 1)");
    if (!(c2 < 3.0 * c1))
        throw std::invalid_argument("material.c2 must be < 3*c1 (sampled-convexity regime)");
}

void GrowthConstants::validate() const {
    if (!(C1 > 0.0)) throw std::invalid_argument("growth constant C1 must be > 0");
    if (!(p > 1.0)) throw std::invalid_argument("growth exponent p must be > 1");
    if (!(q > 4.0 / 3.0)) throw std::invalid_argument("growth exponent q must be > 4/3");
    if (!(r > 1.0)) throw std::invalid_argument("growth exponent r must be > 1");
    if (q >= 2.0 && !(p > 2.0 * q / (2.0 + q)))
        throw std::invalid_argument("growth exponents must satisfy p > 2q/(2+q) for q >= 2");
}

double bending_energy(const SymMat2& k, const MaterialParams& p) {
    const double tr = trace(k);
    // nu (tr K)^2 + (1-nu) |K|^2 == (tr K)^2 - 2(1-nu) det K, written as the
    // positive combination so rounding cannot produce a negative value.
    return 0.5 * p.bending_stiffness * (p.nu * tr * tr + (1.0 - p.nu) * frob2(k));
}

double membrane_energy(const Mat32& f, double j, const MaterialParams& p) {
    if (!(j > 0.0)) throw std::domain_error("membrane_energy: area ratio J must be > 0");
    const double f2 = frob2(f);
    const double inv_j2 = 1.0 / (j * j);
    return p.c1 * (f2 + inv_j2 - 3.0) + p.c2 * (j * j + f2 * inv_j2 - 3.0);
}

double gamma_density(const SymMat2& k, const Mat32& f, double j, const MaterialParams& p) {
    return bending_energy(k, p) + membrane_energy(f, j, p);
}

double spatial_membrane_energy(const Mat32& f, const MaterialParams& p) {
    return membrane_energy(f, exact_area_ratio(f), p);
}

Mat32 exact_area_ratio_derivative(const Mat32& f) {
    // d sqrt(det F^T F) / dF = J F C^-1.
    const SymMat2 ci = inverse(right_cauchy_green(f));
    const Mat32 fci{f.m11 * ci.k11 + f.m12 * ci.k12, f.m11 * ci.k12 + f.m12 * ci.k22,
                    f.m21 * ci.k11 + f.m22 * ci.k12, f.m21 * ci.k12 + f.m22 * ci.k22,
                    f.m31 * ci.k11 + f.m32 * ci.k12, f.m31 * ci.k12 + f.m32 * ci.k22};
    return exact_area_ratio(f) * fci;
}

double total_density(const SymMat2& k, const Mat32& f, const MaterialParams& p) {
    if (!(area_ratio_J(top_block(f)) > 0.0))
        throw std::domain_error("total_density: det grad h must be > 0");
    return bending_energy(k, p) + spatial_membrane_energy(f, p);
}

GammaDerivatives gamma_derivatives(const SymMat2& k, const Mat32& f, double j,
                                   const MaterialParams& p) {
    if (!(j > 0.0)) throw std::domain_error("gamma_derivatives: area ratio J must be > 0");
    GammaDerivatives d;
    const double tr = trace(k);
    const double dnu = p.bending_stiffness * p.nu * tr;
    d.dK = {dnu + p.bending_stiffness * (1.0 - p.nu) * k.k11,
            p.bending_stiffness * (1.0 - p.nu) * k.k12,
            dnu + p.bending_stiffness * (1.0 - p.nu) * k.k22};
    const double inv_j2 = 1.0 / (j * j);
    d.dF = 2.0 * (p.c1 + p.c2 * inv_j2) * f;
    d.dJ = -2.0 * p.c1 * inv_j2 / j + 2.0 * p.c2 * j - 2.0 * p.c2 * frob2(f) * inv_j2 / j;
    return d;
}

TotalDerivatives total_derivatives(const SymMat2& k, const Mat32& f, const MaterialParams& p) {
    const Mat2 h = top_block(f);
    if (!(det2(h) > 0.0)) throw std::domain_error("total_derivatives: det grad h must be > 0");
    const GammaDerivatives g = gamma_derivatives(k, f, exact_area_ratio(f), p);
    TotalDerivatives t;
    t.wK = g.dK;
    t.wF = g.dF + g.dJ * exact_area_ratio_derivative(f);
    return t;
}

GrowthConstants derive_growth_constants(const MaterialParams& p) {
    if (!(p.c2 > 0.0))
        throw std::domain_error("H2 r-coercivity unavailable: c2 = 0 leaves J^r uncovered");
    GrowthConstants g;
    g.p = g.q = g.r = 2.0;
    g.C1 = std::min({0.5 * p.bending_stiffness * (1.0 - p.nu), p.c1, p.c2});
    g.C2 = -3.0 * (p.c1 + p.c2);
    g.validate();
    return g;
}

}  // namespace wrinklevar
