#include "wrinklevar/state.hpp"

#include <algorithm>
#include <stdexcept>

namespace wrinklevar {

DeformationState DeformationState::reference(const GridSpec& g) {
    DeformationState s;
    s.grid = g;
    s.h.resize(g.num_nodes());
    s.w.assign(g.num_nodes(), 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) s.h[g.node(i, j)] = {g.x1(i), g.x2(j)};
    return s;
}

void DeformationState::check_consistent() const {
    detail::check_sized(h, grid, "DeformationState.h");
    detail::check_field(w, grid, "DeformationState.w");
}

bool BoundarySpec::on_gamma(const GridSpec& g, int i, int j) const {
    if (is_clamped(Side::Left) && i == 0) return true;
    if (is_clamped(Side::Right) && i == g.nx - 1) return true;
    if (is_clamped(Side::Bottom) && j == 0) return true;
    if (is_clamped(Side::Top) && j == g.ny - 1) return true;
    return false;
}

BoundarySpec BoundarySpec::uniaxial_stretch(double lambda) {
    BoundarySpec bc;
    bc.clamped[static_cast<int>(Side::Left)] = true;
    bc.clamped[static_cast<int>(Side::Right)] = true;
    bc.lambda = lambda;
    bc.h_map = [](Vec2 x, double lam) { return Vec2{lam * x.x, x.y}; };
    bc.w_map = [](Vec2, double) { return 0.0; };
    return bc;
}

BoundarySpec BoundarySpec::none() {
    BoundarySpec bc;
    bc.h_map = [](Vec2 x, double) { return x; };
    bc.w_map = [](Vec2, double) { return 0.0; };
    return bc;
}

void BoundarySpec::validate() const {
    if (!any_clamped())
        throw std::invalid_argument("boundary spec needs at least one clamped side");
    if (!h_map || !w_map) throw std::invalid_argument("boundary spec needs trace maps");
}

LoadSpec LoadSpec::zero(const GridSpec& g) {
    return {Vec2Field(g.num_nodes(), Vec2{}), Vec3Field(g.num_nodes(), Vec3{})};
}

LoadSpec LoadSpec::uniform(const GridSpec& g, Vec2 m0, Vec3 b0) {
    return {Vec2Field(g.num_nodes(), m0), Vec3Field(g.num_nodes(), b0)};
}

bool LoadSpec::is_zero() const {
    for (const Vec2& v : m)
        if (v.x != 0.0 || v.y != 0.0) return false;
    for (const Vec3& v : b)
        if (v.x != 0.0 || v.y != 0.0 || v.z != 0.0) return false;
    return true;
}

std::size_t DofMask::fixed_count() const {
    return static_cast<std::size_t>(std::count(fixed.begin(), fixed.end(), std::uint8_t{1}));
}

std::pair<DeformationState, DofMask> apply_boundary(const DeformationState& s,
                                                    const BoundarySpec& bc) {
    s.check_consistent();
    const GridSpec& g = s.grid;
    DeformationState out = s;
    DofMask mask;
    mask.fixed.assign(static_cast<std::size_t>(3 * g.num_nodes()), 0);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (!bc.on_gamma(g, i, j)) continue;
            const Vec2 x{g.x1(i), g.x2(j)};
            out.h[g.node(i, j)] = bc.h_map(x, bc.lambda);
            out.w[g.node(i, j)] = bc.w_map(x, bc.lambda);
            mask.fixed[dof_index(g, i, j, 0)] = 1;
            mask.fixed[dof_index(g, i, j, 1)] = 1;
            mask.fixed[dof_index(g, i, j, 2)] = 1;
            mask.ghost_rows += 1;  // reflection constraint for the w slope
        }
    }
    return {std::move(out), std::move(mask)};
}

DeformationState state_from_boundary_maps(const GridSpec& g, const BoundarySpec& bc) {
    DeformationState s;
    s.grid = g;
    s.h.resize(g.num_nodes());
    s.w.resize(g.num_nodes());
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 x{g.x1(i), g.x2(j)};
            s.h[g.node(i, j)] = bc.h_map(x, bc.lambda);
            s.w[g.node(i, j)] = bc.w_map(x, bc.lambda);
        }
    }
    return s;
}

double load_potential(const DeformationState& s, const LoadSpec& loads) {
    s.check_consistent();
    const GridSpec& g = s.grid;
    detail::check_sized(loads.m, g, "LoadSpec.m");
    detail::check_sized(loads.b, g, "LoadSpec.b");
    const Vec2Field gw = grad_scalar(s.w, g);
    ScalarField integrand(s.w.size());
    for (std::size_t n = 0; n < s.w.size(); ++n) {
        const Vec3& b = loads.b[n];
        integrand[n] = dot(loads.m[n], gw[n]) + b.x * s.h[n].x + b.y * s.h[n].y + b.z * s.w[n];
    }
    return quadrature_integrate(integrand, g);
}

ScalarField area_ratio_field(const DeformationState& s) {
    const Mat2Field gh = grad_vec2(s.h, s.grid);
    ScalarField j(gh.size());
    for (std::size_t n = 0; n < gh.size(); ++n) j[n] = det2(gh[n]);
    return j;
}

double min_area_ratio(const DeformationState& s) {
    const ScalarField j = area_ratio_field(s);
    return *std::min_element(j.begin(), j.end());
}

SymMat2Field hessian_scalar(const ScalarField& f, const GridSpec& g, const BoundarySpec& bc) {
    return hessian_scalar(f, g, bc.clamped_ends());
}

}  // namespace wrinklevar
