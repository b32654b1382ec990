#include "wrinklevar/energy.hpp"

#include <algorithm>

namespace wrinklevar {

namespace {

struct Kinematics {
    Mat2Field gradh;
    Vec2Field gradw;
    SymMat2Field hessw;
    ScalarField j;
};

Kinematics assemble_kinematics(const DeformationState& s, const BoundarySpec& bc) {
    s.check_consistent();
    Kinematics k;
    k.gradh = grad_vec2(s.h, s.grid);
    k.gradw = grad_scalar(s.w, s.grid);
    k.hessw = hessian_scalar(s.w, s.grid, bc.clamped_ends());
    k.j.resize(k.gradh.size());
    for (std::size_t n = 0; n < k.gradh.size(); ++n) k.j[n] = det2(k.gradh[n]);
    return k;
}

void require_feasible(const ScalarField& j) {
    for (double v : j)
        if (!(v > 0.0))
            throw FeasibilityError("state is infeasible: nodal area ratio J <= 0");
}

ScalarField node_weights(const GridSpec& g) {
    ScalarField w(g.num_nodes());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) w[g.node(i, j)] = quadrature_weight(g, i, j);
    return w;
}

struct GradientStencils {
    Stencil1D dx0, dy0;    // plain first derivatives (grad_scalar closures)
    Stencil1D dxm, dym;    // first derivatives with mirror rows at clamped ends
    Stencil1D dxx, dyy;    // second derivatives with boundary closures
};

GradientStencils make_stencils(const GridSpec& g, const ClampedEnds& ce) {
    const auto rule = [](bool clamped) { return clamped ? EndRule::Mirror : EndRule::OneSided; };
    GradientStencils st;
    st.dx0 = first_derivative_stencil(g.nx, g.hx(), EndRule::OneSided, EndRule::OneSided);
    st.dy0 = first_derivative_stencil(g.ny, g.hy(), EndRule::OneSided, EndRule::OneSided);
    st.dxm = first_derivative_stencil(g.nx, g.hx(), rule(ce.x_lo), rule(ce.x_hi));
    st.dym = first_derivative_stencil(g.ny, g.hy(), rule(ce.y_lo), rule(ce.y_hi));
    st.dxx = second_derivative_stencil(g.nx, g.hx(), rule(ce.x_lo), rule(ce.x_hi));
    st.dyy = second_derivative_stencil(g.ny, g.hy(), rule(ce.y_lo), rule(ce.y_hi));
    return st;
}

}  // namespace

EnergyBreakdown assemble_energy(const DeformationState& s, const MaterialParams& p,
                                const LoadSpec& loads, const BoundarySpec& bc) {
    const Kinematics kin = assemble_kinematics(s, bc);
    require_feasible(kin.j);
    const int n = s.grid.num_nodes();
    ScalarField mem(n), bend(n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const Mat32 f = assemble_F(kin.gradh[i], kin.gradw[i]);
        mem[i] = spatial_membrane_energy(f, p);
        bend[i] = bending_energy(curvature_K(kin.hessw[i]), p);
    }
    EnergyBreakdown e;
    e.membrane = quadrature_integrate(mem, s.grid);
    e.bending = quadrature_integrate(bend, s.grid);
    e.load = load_potential(s, loads);
    e.total = e.membrane + e.bending - e.load;
    return e;
}

EnergyBreakdown assemble_energy_serial(const DeformationState& s, const MaterialParams& p,
                                       const LoadSpec& loads, const BoundarySpec& bc) {
    const Kinematics kin = assemble_kinematics(s, bc);
    require_feasible(kin.j);
    const GridSpec& g = s.grid;
    EnergyBreakdown e;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int n = g.node(i, j);
            const double w = quadrature_weight(g, i, j);
            const Mat32 f = assemble_F(kin.gradh[n], kin.gradw[n]);
            e.membrane += w * spatial_membrane_energy(f, p);
            e.bending += w * bending_energy(curvature_K(kin.hessw[n]), p);
        }
    }
    e.load = load_potential(s, loads);
    e.total = e.membrane + e.bending - e.load;
    return e;
}

StressFields stress_fields(const DeformationState& s, const MaterialParams& p,
                           const BoundarySpec& bc) {
    const Kinematics kin = assemble_kinematics(s, bc);
    require_feasible(kin.j);
    const int n = s.grid.num_nodes();
    StressFields out;
    out.wK.resize(n);
    out.wF.resize(n);
    out.j = kin.j;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const Mat32 f = assemble_F(kin.gradh[i], kin.gradw[i]);
        const TotalDerivatives td = total_derivatives(curvature_K(kin.hessw[i]), f, p);
        out.wK[i] = td.wK;
        out.wF[i] = td.wF;
    }
    return out;
}

std::vector<double> assemble_gradient(const DeformationState& s, const MaterialParams& p,
                                      const LoadSpec& loads, const BoundarySpec& bc) {
    const GridSpec& g = s.grid;
    detail::check_sized(loads.m, g, "LoadSpec.m");
    detail::check_sized(loads.b, g, "LoadSpec.b");
    const StressFields st = stress_fields(s, p, bc);
    const ScalarField w = node_weights(g);
    const int n = g.num_nodes();

    // Quadrature-weighted stress components.
    ScalarField s11(n), s12(n), s21(n), s22(n), s31(n), s32(n), k11(n), k12(n), k22(n);
    ScalarField m1(n), m2(n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        s11[i] = w[i] * st.wF[i].m11;
        s12[i] = w[i] * st.wF[i].m12;
        s21[i] = w[i] * st.wF[i].m21;
        s22[i] = w[i] * st.wF[i].m22;
        s31[i] = w[i] * st.wF[i].m31;
        s32[i] = w[i] * st.wF[i].m32;
        k11[i] = w[i] * st.wK[i].k11;
        k12[i] = 2.0 * w[i] * st.wK[i].k12;  // both off-diagonal slots of K
        k22[i] = w[i] * st.wK[i].k22;
        m1[i] = w[i] * loads.m[i].x;
        m2[i] = w[i] * loads.m[i].y;
    }

    const GradientStencils sten = make_stencils(g, bc.clamped_ends());
    const Stencil1D dx0T = sten.dx0.transposed();
    const Stencil1D dy0T = sten.dy0.transposed();
    const Stencil1D dxmT = sten.dxm.transposed();
    const Stencil1D dymT = sten.dym.transposed();
    const Stencil1D dxxT = sten.dxx.transposed();
    const Stencil1D dyyT = sten.dyy.transposed();

    const ScalarField gh1a = apply_along_x(dx0T, s11, g);
    const ScalarField gh1b = apply_along_y(dy0T, s12, g);
    const ScalarField gh2a = apply_along_x(dx0T, s21, g);
    const ScalarField gh2b = apply_along_y(dy0T, s22, g);
    const ScalarField gwa = apply_along_x(dx0T, s31, g);
    const ScalarField gwb = apply_along_y(dy0T, s32, g);
    const ScalarField gw11 = apply_along_x(dxxT, k11, g);
    const ScalarField gw22 = apply_along_y(dyyT, k22, g);
    const ScalarField gw12 = apply_along_x(dxmT, apply_along_y(dymT, k12, g), g);
    const ScalarField gm1 = apply_along_x(dx0T, m1, g);
    const ScalarField gm2 = apply_along_y(dy0T, m2, g);

    std::vector<double> grad(static_cast<std::size_t>(3 * n), 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        grad[3 * i + 0] = gh1a[i] + gh1b[i] - w[i] * loads.b[i].x;
        grad[3 * i + 1] = gh2a[i] + gh2b[i] - w[i] * loads.b[i].y;
        grad[3 * i + 2] =
            gwa[i] + gwb[i] + gw11[i] + gw22[i] + gw12[i] - w[i] * loads.b[i].z - gm1[i] - gm2[i];
    }

    const DofMask mask = apply_boundary(s, bc).second;
    for (std::size_t d = 0; d < grad.size(); ++d)
        if (mask.is_fixed(static_cast<int>(d))) grad[d] = 0.0;
    return grad;
}

std::vector<double> assemble_gradient_serial(const DeformationState& s, const MaterialParams& p,
                                             const LoadSpec& loads, const BoundarySpec& bc) {
    const GridSpec& g = s.grid;
    detail::check_sized(loads.m, g, "LoadSpec.m");
    detail::check_sized(loads.b, g, "LoadSpec.b");
    const StressFields st = stress_fields(s, p, bc);
    const GradientStencils sten = make_stencils(g, bc.clamped_ends());
    std::vector<double> grad(static_cast<std::size_t>(3 * g.num_nodes()), 0.0);

    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int n = g.node(i, j);
            const double w = quadrature_weight(g, i, j);
            const Mat32& wf = st.wF[n];
            const SymMat2& wk = st.wK[n];
            for (const auto& e : sten.dx0.rows[i]) {
                grad[3 * g.node(e.col, j) + 0] += e.w * w * wf.m11;
                grad[3 * g.node(e.col, j) + 1] += e.w * w * wf.m21;
                grad[3 * g.node(e.col, j) + 2] += e.w * w * (wf.m31 - loads.m[n].x);
            }
            for (const auto& e : sten.dy0.rows[j]) {
                grad[3 * g.node(i, e.col) + 0] += e.w * w * wf.m12;
                grad[3 * g.node(i, e.col) + 1] += e.w * w * wf.m22;
                grad[3 * g.node(i, e.col) + 2] += e.w * w * (wf.m32 - loads.m[n].y);
            }
            for (const auto& e : sten.dxx.rows[i]) grad[3 * g.node(e.col, j) + 2] += e.w * w * wk.k11;
            for (const auto& e : sten.dyy.rows[j]) grad[3 * g.node(i, e.col) + 2] += e.w * w * wk.k22;
            for (const auto& ey : sten.dym.rows[j])
                for (const auto& ex : sten.dxm.rows[i])
                    grad[3 * g.node(ex.col, ey.col) + 2] += 2.0 * ex.w * ey.w * w * wk.k12;
            grad[3 * n + 0] -= w * loads.b[n].x;
            grad[3 * n + 1] -= w * loads.b[n].y;
            grad[3 * n + 2] -= w * loads.b[n].z;
        }
    }

    const DofMask mask = apply_boundary(s, bc).second;
    for (std::size_t d = 0; d < grad.size(); ++d)
        if (mask.is_fixed(static_cast<int>(d))) grad[d] = 0.0;
    return grad;
}

}  // namespace wrinklevar
