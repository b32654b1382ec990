#pragma once

#include <stdexcept>
#include <vector>

#include "wrinklevar/constitutive.hpp"
#include "wrinklevar/state.hpp"

// Discrete energy of a configuration and its exact gradient with respect to
// the nodal dofs. The gradient transposes the difference stencils against
// the pointwise stress (gather form, data parallel); a plain scatter-form
// serial implementation is kept as a reference for tests and benchmarks.

namespace wrinklevar {

struct FeasibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnergyBreakdown {
    double membrane = 0.0;
    double bending = 0.0;
    double load = 0.0;
    double total = 0.0;  // membrane + bending - load
};

// Pointwise stress of the assembled state: W_K, W_F and the area ratio.
struct StressFields {
    SymMat2Field wK;
    Mat32Field wF;
    ScalarField j;
};

// Throws FeasibilityError if any nodal area ratio is <= 0; the barrier is
// never evaluated past the pole.
EnergyBreakdown assemble_energy(const DeformationState& s, const MaterialParams& p,
                                const LoadSpec& loads, const BoundarySpec& bc);

// Gradient of assemble_energy(...).total with respect to every nodal dof,
// interleaved (h1, h2, w) per node; Dirichlet-masked entries are zero.
std::vector<double> assemble_gradient(const DeformationState& s, const MaterialParams& p,
                                      const LoadSpec& loads, const BoundarySpec& bc);

// Reference implementations: single loop accumulation / stencil scatter.
EnergyBreakdown assemble_energy_serial(const DeformationState& s, const MaterialParams& p,
                                       const LoadSpec& loads, const BoundarySpec& bc);
std::vector<double> assemble_gradient_serial(const DeformationState& s, const MaterialParams& p,
                                             const LoadSpec& loads, const BoundarySpec& bc);

StressFields stress_fields(const DeformationState& s, const MaterialParams& p,
                           const BoundarySpec& bc);

}  // namespace wrinklevar
