#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wrinklevar/constitutive.hpp"
#include "wrinklevar/grid.hpp"

// Numerical certification / falsification harness for the structural
// properties of the energy density: convexity of the representative,
// coercive growth, blow-up at vanishing area ratio, loss of rank-one
// convexity for spatial deformations, planar polyconvexity, and weak
// convergence of the distributional determinant.

namespace wrinklevar {

// Sampling domain: |K| <= k_max, |F| <= f_max (Frobenius balls) and
// J in [j_min, j_max]. Convex, so midpoints stay inside.
struct SampleBox {
    double k_max = 5.0;
    double f_max = 5.0;
    double j_min = 0.2;
    double j_max = 5.0;
    long long samples = 100000;
    std::uint64_t seed = 1;

    void validate() const;
};

struct HypothesisReport {
    std::string name;
    bool pass = false;
    long long violations = 0;
    long long samples = 0;
    std::uint64_t seed = 0;
    double worst_margin = 0.0;  // >= 0 (up to tolerance) when the check passes
    std::string witness;        // nonempty whenever pass == false
};

struct RankOneWitness {
    Mat32 f0;
    Vec3 a;  // unit out-of-plane direction
    Vec2 b;  // unit planar direction
    double g2_fd = 0.0;           // second central difference along t -> W(F0 + t a (x) b)
    double g2_closed_form = 0.0;  // 2 b . (dPhi/dC) b at C0
};

// Midpoint convexity of gamma(K, F, J) on sampled pairs with tolerance
// 1e-12 max(1, |gamma_a| + |gamma_b|). Violations are report contents.
HypothesisReport check_convexity_H1(const MaterialParams& p, const SampleBox& box);

// Pointwise growth bound with the derived constants; margin tolerance 1e-12.
HypothesisReport check_growth_H2(const MaterialParams& p, const SampleBox& box);

// Blow-up along a strictly decreasing positive J sequence at the frozen
// reference slice K = 0, F = embedded identity: values dominate the
// c1 J^-2 - 3(c1+c2) barrier floor and increase monotonically once J < 1.
HypothesisReport check_blowup_H3(const MaterialParams& p, const std::vector<double>& j_seq);

// 2 b . S b with S = dPhi/dC at C = F0^T F0: the exact second derivative of
// t -> spatial_membrane_energy(F0 + t e3 (x) b) at t = 0.
double rank_one_second_derivative(const Mat32& f0, Vec2 b, const MaterialParams& p);

// Second central difference of the same composition, step 1e-4.
double rank_one_second_difference(const Mat32& f0, Vec2 b, const MaterialParams& p);

// Scans planar F0 = diag(l1, l2) over a stretch grid, lateral direction
// first, and returns the first probe with negative curvature. Throws
// std::runtime_error if the grid is exhausted without a witness.
RankOneWitness find_rank_one_nonconvexity(const MaterialParams& p);

// Midpoint convexity of the planar polyconvexity representative
// (F_2x2, delta) -> c1(|F|^2 + delta^-2 - 3) + c2(delta^2 + |F|^2 delta^-2 - 3).
HypothesisReport check_planar_polyconvexity(const MaterialParams& p, const SampleBox& box);

// Distributional-determinant pairing along the oscillatory family
// h_k(x) = x + (0.9/k)(sin k x1, sin k x2) (k = 0 means the identity map).
// Values converge to the quadrature of the test function.
std::vector<double> weak_convergence_demo(const std::vector<int>& k_list,
                                          const ScalarField& testfn, const GridSpec& g);

// Oscillatory demo field for a given k on the grid.
Vec2Field oscillatory_map(int k, const GridSpec& g);

// Closed-form det grad h_k at a point; stays >= 0.01 for the 0.9/k amplitude.
double oscillatory_det(int k, double x1, double x2);

// Smooth bump sin^3(pi x1/Lx) sin^3(pi x2/Ly) with the two outermost node
// rings zeroed, admissible for the pairing.
ScalarField clamped_bump_testfn(const GridSpec& g);

}  // namespace wrinklevar
