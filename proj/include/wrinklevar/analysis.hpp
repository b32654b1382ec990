#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wrinklevar/energy.hpp"

// Post-processing: wrinkle metrics from a cross-section of w and the
// restricted weak-form residual of the out-of-plane equilibrium equation.

namespace wrinklevar {

struct WrinkleMetrics {
    double amplitude = 0.0;               // max |w| along the mid-section x1 = Lx/2
    int sign_changes = 0;                 // zero crossings with a 1e-12 relative dead band
    std::optional<double> wavelength;     // 2 x mean crossing spacing; needs >= 2 crossings
};

WrinkleMetrics wrinkle_metrics(const DeformationState& s);

struct ResidualReport {
    int n = 0;                        // cutoff level of the restriction set
    double measure_fraction = 0.0;    // |Omega_n| / |Omega| by quadrature measure
    std::vector<double> residuals;    // normalized, one per test function
    double max_abs = 0.0;
};

// Nodes with |W_K| + |W_F| <= n and det grad h >= 1/n.
std::vector<std::uint8_t> omega_n_marks(const DeformationState& s, const MaterialParams& p,
                                        const BoundarySpec& bc, int n);

// Evaluates int_{Omega_n} W_K : hess(eta) + (W_F^T e3) . grad(eta) dx for
// test_set_size random smooth eta vanishing on Gamma with vanishing normal
// derivative; each residual is normalized by the quadrature norms of
// hess(eta) and grad(eta).
ResidualReport equilibrium_residual(const DeformationState& s, const MaterialParams& p,
                                    const BoundarySpec& bc, int n, int test_set_size,
                                    std::uint64_t seed);

// The randomized admissible test function used by the residual.
ScalarField admissible_test_function(const GridSpec& g, const BoundarySpec& bc,
                                     std::uint64_t seed, std::uint64_t index);

// Raw (unnormalized) restricted weak-form value for a single test function;
// linear in eta.
double weak_form_pairing(const DeformationState& s, const MaterialParams& p,
                         const BoundarySpec& bc, const std::vector<std::uint8_t>& marks,
                         const ScalarField& eta);

}  // namespace wrinklevar
