#include "wrinklevar/grid.hpp"

#include <stdexcept>
#include <string>

namespace wrinklevar {

void GridSpec::validate() const {
    if (nx < 4 || ny < 4) throw std::invalid_argument("grid needs nx, ny >= 4");
    if (!(Lx > 0.0) || !(Ly > 0.0)) throw std::invalid_argument("grid needs Lx, Ly > 0");
}

namespace detail {

void check_field(const ScalarField& f, const GridSpec& g, const char* what) {
    if (static_cast<int>(f.size()) != g.num_nodes())
        throw std::invalid_argument(std::string(what) + ": field size does not match grid");
}

template <class T>
void check_sized(const std::vector<T>& f, const GridSpec& g, const char* what) {
    if (static_cast<int>(f.size()) != g.num_nodes())
        throw std::invalid_argument(std::string(what) + ": field size does not match grid");
}

template void check_sized<Vec2>(const std::vector<Vec2>&, const GridSpec&, const char*);
template void check_sized<Vec3>(const std::vector<Vec3>&, const GridSpec&, const char*);
template void check_sized<Mat2>(const std::vector<Mat2>&, const GridSpec&, const char*);
template void check_sized<SymMat2>(const std::vector<SymMat2>&, const GridSpec&, const char*);

}  // namespace detail

Stencil1D Stencil1D::transposed() const {
    Stencil1D t;
    t.rows.resize(rows.size());
    for (int r = 0; r < size(); ++r)
        for (const Entry& e : rows[r]) t.rows[e.col].push_back({r, e.w});
    return t;
}

Stencil1D first_derivative_stencil(int n, double h, EndRule lo, EndRule hi) {
    Stencil1D s;
    s.rows.resize(n);
    const double c = 1.0 / (2.0 * h);
    if (lo == EndRule::OneSided)
        s.rows[0] = {{0, -3.0 * c}, {1, 4.0 * c}, {2, -c}};
    // Mirror: (f[1] - f[ghost]) / 2h with ghost = f[1], i.e. an empty row.
    for (int i = 1; i < n - 1; ++i) s.rows[i] = {{i - 1, -c}, {i + 1, c}};
    if (hi == EndRule::OneSided)
        s.rows[n - 1] = {{n - 3, c}, {n - 2, -4.0 * c}, {n - 1, 3.0 * c}};
    return s;
}

Stencil1D second_derivative_stencil(int n, double h, EndRule lo, EndRule hi) {
    Stencil1D s;
    s.rows.resize(n);
    const double c = 1.0 / (h * h);
    if (lo == EndRule::Mirror)
        s.rows[0] = {{0, -2.0 * c}, {1, 2.0 * c}};
    else
        s.rows[0] = {{0, 2.0 * c}, {1, -5.0 * c}, {2, 4.0 * c}, {3, -c}};
    for (int i = 1; i < n - 1; ++i) s.rows[i] = {{i - 1, c}, {i, -2.0 * c}, {i + 1, c}};
    if (hi == EndRule::Mirror)
        s.rows[n - 1] = {{n - 1, -2.0 * c}, {n - 2, 2.0 * c}};
    else
        s.rows[n - 1] = {{n - 1, 2.0 * c}, {n - 2, -5.0 * c}, {n - 3, 4.0 * c}, {n - 4, -c}};
    return s;
}

ScalarField apply_along_x(const Stencil1D& s, const ScalarField& f, const GridSpec& g) {
    detail::check_field(f, g, "apply_along_x");
    if (s.size() != g.nx) throw std::invalid_argument("apply_along_x: stencil size != nx");
    ScalarField out(f.size(), 0.0);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j) {
        const int base = j * g.nx;
        for (int i = 0; i < g.nx; ++i) {
            double v = 0.0;
            for (const Stencil1D::Entry& e : s.rows[i]) v += e.w * f[base + e.col];
            out[base + i] = v;
        }
    }
    return out;
}

ScalarField apply_along_y(const Stencil1D& s, const ScalarField& f, const GridSpec& g) {
    detail::check_field(f, g, "apply_along_y");
    if (s.size() != g.ny) throw std::invalid_argument("apply_along_y: stencil size != ny");
    ScalarField out(f.size(), 0.0);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            double v = 0.0;
            for (const Stencil1D::Entry& e : s.rows[j]) v += e.w * f[e.col * g.nx + i];
            out[j * g.nx + i] = v;
        }
    }
    return out;
}

Vec2Field grad_scalar(const ScalarField& f, const GridSpec& g) {
    detail::check_field(f, g, "grad_scalar");
    const Stencil1D dx = first_derivative_stencil(g.nx, g.hx(), EndRule::OneSided, EndRule::OneSided);
    const Stencil1D dy = first_derivative_stencil(g.ny, g.hy(), EndRule::OneSided, EndRule::OneSided);
    const ScalarField fx = apply_along_x(dx, f, g);
    const ScalarField fy = apply_along_y(dy, f, g);
    Vec2Field out(f.size());
    for (std::size_t n = 0; n < f.size(); ++n) out[n] = {fx[n], fy[n]};
    return out;
}

Mat2Field grad_vec2(const Vec2Field& f, const GridSpec& g) {
    detail::check_sized(f, g, "grad_vec2");
    ScalarField f1(f.size()), f2(f.size());
    for (std::size_t n = 0; n < f.size(); ++n) {
        f1[n] = f[n].x;
        f2[n] = f[n].y;
    }
    const Vec2Field g1 = grad_scalar(f1, g);
    const Vec2Field g2 = grad_scalar(f2, g);
    Mat2Field out(f.size());
    for (std::size_t n = 0; n < f.size(); ++n) out[n] = {g1[n].x, g1[n].y, g2[n].x, g2[n].y};
    return out;
}

SymMat2Field hessian_scalar(const ScalarField& f, const GridSpec& g, const ClampedEnds& ce) {
    detail::check_field(f, g, "hessian_scalar");
    const auto rule = [](bool clamped) { return clamped ? EndRule::Mirror : EndRule::OneSided; };
    const Stencil1D dxx =
        second_derivative_stencil(g.nx, g.hx(), rule(ce.x_lo), rule(ce.x_hi));
    const Stencil1D dyy =
        second_derivative_stencil(g.ny, g.hy(), rule(ce.y_lo), rule(ce.y_hi));
    const Stencil1D dx =
        first_derivative_stencil(g.nx, g.hx(), rule(ce.x_lo), rule(ce.x_hi));
    const Stencil1D dy =
        first_derivative_stencil(g.ny, g.hy(), rule(ce.y_lo), rule(ce.y_hi));
    const ScalarField f11 = apply_along_x(dxx, f, g);
    const ScalarField f22 = apply_along_y(dyy, f, g);
    const ScalarField f12 = apply_along_y(dy, apply_along_x(dx, f, g), g);
    SymMat2Field out(f.size());
    for (std::size_t n = 0; n < f.size(); ++n) out[n] = {f11[n], f12[n], f22[n]};
    return out;
}

double quadrature_weight(const GridSpec& g, int i, int j) {
    const double wx = (i == 0 || i == g.nx - 1) ? 0.5 * g.hx() : g.hx();
    const double wy = (j == 0 || j == g.ny - 1) ? 0.5 * g.hy() : g.hy();
    return wx * wy;
}

double quadrature_integrate(const ScalarField& f, const GridSpec& g) {
    detail::check_field(f, g, "quadrature_integrate");
    double sum = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) sum += quadrature_weight(g, i, j) * f[g.node(i, j)];
    return sum;
}

}  // namespace wrinklevar
