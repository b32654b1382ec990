#pragma once

#include <utility>
#include <vector>

#include "wrinklevar/tensors.hpp"

// Uniform tensor-product grid on a rectangle with node-centered fields,
// second-order difference stencils and trapezoid quadrature. Node index is
// row major with x1 fastest: node(i, j) = j*nx + i.

namespace wrinklevar {

struct GridSpec {
    int nx = 4;
    int ny = 4;
    double Lx = 1.0;
    double Ly = 1.0;

    void validate() const;  // nx, ny >= 4 and positive side lengths

    double hx() const { return Lx / (nx - 1); }
    double hy() const { return Ly / (ny - 1); }
    int num_nodes() const { return nx * ny; }
    int node(int i, int j) const { return j * nx + i; }
    double x1(int i) const { return Lx * i / (nx - 1); }
    double x2(int j) const { return Ly * j / (ny - 1); }
    bool interior(int i, int j) const {
        return i > 0 && i < nx - 1 && j > 0 && j < ny - 1;
    }
    bool operator==(const GridSpec&) const = default;
};

using ScalarField = std::vector<double>;
using Vec2Field = std::vector<Vec2>;
using Vec3Field = std::vector<Vec3>;
using Mat2Field = std::vector<Mat2>;
using SymMat2Field = std::vector<SymMat2>;
using Mat32Field = std::vector<Mat32>;

// Which grid edges carry a clamped (mirror-ghost) closure. Decouples the
// stencil layer from the boundary-condition type.
struct ClampedEnds {
    bool x_lo = false;
    bool x_hi = false;
    bool y_lo = false;
    bool y_hi = false;
};

// One-dimensional banded difference operator; rows hold (column, weight)
// pairs. Built once per grid line length, applied along x or y.
struct Stencil1D {
    struct Entry {
        int col;
        double w;
    };
    std::vector<std::vector<Entry>> rows;

    int size() const { return static_cast<int>(rows.size()); }
    Stencil1D transposed() const;
};

enum class EndRule {
    OneSided,  // second-order one-sided closure
    Mirror,    // ghost = mirror of first interior value (clamped normal slope)
};

// First derivative: central inside, closure per end. A Mirror end row is
// identically zero since the mirrored ghost cancels the interior value.
Stencil1D first_derivative_stencil(int n, double h, EndRule lo, EndRule hi);

// Second derivative: central inside; Mirror ends use the reflected ghost,
// OneSided ends the 4-point second-order formula.
Stencil1D second_derivative_stencil(int n, double h, EndRule lo, EndRule hi);

// Apply a 1-D stencil along the x1 (respectively x2) direction of a nodal field.
ScalarField apply_along_x(const Stencil1D& s, const ScalarField& f, const GridSpec& g);
ScalarField apply_along_y(const Stencil1D& s, const ScalarField& f, const GridSpec& g);

// Gradient of a nodal scalar field: central differences at interior nodes,
// second-order one-sided at the boundary. Exact for affine fields.
Vec2Field grad_scalar(const ScalarField& f, const GridSpec& g);

// Componentwise gradient of a nodal planar field.
Mat2Field grad_vec2(const Vec2Field& f, const GridSpec& g);

// Hessian of a nodal scalar field. Pure second derivatives use mirror ghosts
// at clamped ends; the cross derivative composes the two first-derivative
// operators with the same closures (so it vanishes at clamped nodes, matching
// the zero normal slope). Exact for quadratics at interior nodes.
SymMat2Field hessian_scalar(const ScalarField& f, const GridSpec& g, const ClampedEnds& ce);

// Tensor-product trapezoid rule; exact for nodal data of bilinear functions.
double quadrature_integrate(const ScalarField& f, const GridSpec& g);

// Trapezoid weight of a single node.
double quadrature_weight(const GridSpec& g, int i, int j);

namespace detail {
void check_field(const ScalarField& f, const GridSpec& g, const char* what);
template <class T>
void check_sized(const std::vector<T>& f, const GridSpec& g, const char* what);
}  // namespace detail

}  // namespace wrinklevar
