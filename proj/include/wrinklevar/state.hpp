#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "wrinklevar/grid.hpp"

// Discrete configuration (h, w) on a grid plus the trace boundary data and
// the dead-load description. States are value types; operations return
// fresh objects instead of mutating shared ones.

namespace wrinklevar {

enum class Side : int { Left = 0, Right = 1, Bottom = 2, Top = 3 };

struct DeformationState {
    GridSpec grid;
    Vec2Field h;   // planar deformation
    ScalarField w; // out-of-plane displacement

    // Flat reference configuration h(x) = x, w = 0.
    static DeformationState reference(const GridSpec& g);

    void check_consistent() const;
};

// Dirichlet data on a set of rectangle sides. The trace maps receive the
// node position and the stretch parameter, so a continuation sweep can
// restretch the boundary without rebuilding the maps.
struct BoundarySpec {
    bool clamped[4] = {false, false, false, false};
    double lambda = 1.0;
    std::function<Vec2(Vec2, double)> h_map;
    std::function<double(Vec2, double)> w_map;

    bool is_clamped(Side s) const { return clamped[static_cast<int>(s)]; }
    bool any_clamped() const { return clamped[0] || clamped[1] || clamped[2] || clamped[3]; }
    ClampedEnds clamped_ends() const {
        return {is_clamped(Side::Left), is_clamped(Side::Right),
                is_clamped(Side::Bottom), is_clamped(Side::Top)};
    }
    bool on_gamma(const GridSpec& g, int i, int j) const;

    // Uniaxial stretch x -> (lambda x1, x2), w = 0, clamped on the two
    // x1-extreme ("short") sides.
    static BoundarySpec uniaxial_stretch(double lambda);
    // No Dirichlet data at all; used for homogeneous assemblies.
    static BoundarySpec none();

    void validate() const;  // configured problems need |Gamma| > 0
};

// Dead loads: m pairs with grad w, the planar part of b with h and its
// third component with w.
struct LoadSpec {
    Vec2Field m;
    Vec3Field b;

    static LoadSpec zero(const GridSpec& g);
    static LoadSpec uniform(const GridSpec& g, Vec2 m0, Vec3 b0);
    bool is_zero() const;
};

// Constraint bookkeeping for the minimizer. `fixed` marks Dirichlet dofs
// (3 per node: h1, h2, w). Each clamped boundary node additionally carries a
// ghost reflection row for the normal slope of w; those rows have no free
// dof behind them but count toward the constraint total.
struct DofMask {
    std::vector<std::uint8_t> fixed;
    std::size_t ghost_rows = 0;

    bool is_fixed(int dof) const { return fixed[static_cast<std::size_t>(dof)] != 0; }
    std::size_t fixed_count() const;
    std::size_t size() const { return fixed_count() + ghost_rows; }
};

inline int dof_index(const GridSpec& g, int i, int j, int comp) {
    return 3 * g.node(i, j) + comp;
}

// Overwrites h and w on Gamma nodes with the prescribed trace and returns
// the constrained-dof mask. Idempotent.
std::pair<DeformationState, DofMask> apply_boundary(const DeformationState& s,
                                                    const BoundarySpec& bc);

// Evaluates the trace maps over the whole grid; the usual admissible
// initial state for a solve at the prescribed stretch.
DeformationState state_from_boundary_maps(const GridSpec& g, const BoundarySpec& bc);

// Dead-load potential: integral of m . grad w + b_12 . h + b_3 w.
double load_potential(const DeformationState& s, const LoadSpec& loads);

// Nodal area ratio J = det grad h and its minimum over the grid.
ScalarField area_ratio_field(const DeformationState& s);
double min_area_ratio(const DeformationState& s);

SymMat2Field hessian_scalar(const ScalarField& f, const GridSpec& g, const BoundarySpec& bc);

}  // namespace wrinklevar
