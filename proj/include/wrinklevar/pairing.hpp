#pragma once

#include "wrinklevar/grid.hpp"

namespace wrinklevar {

// Weak-form determinant pairing -(1/2) int ([cof grad h]^T h) . grad phi dx
// for a test function phi vanishing on the two outermost node rings (the
// discrete stand-in for compact support). With that support the quadrature
// reduces to interior nodes with uniform weight and central differences, so
// summation by parts is exact: for h(x) = x the pairing equals the
// quadrature of phi to rounding.
// Throws std::invalid_argument if phi violates the support condition.
double distributional_det_pairing(const Vec2Field& hfield, const ScalarField& testfn,
                                  const GridSpec& g);

// True if the field is exactly zero on the boundary ring and its neighbors.
bool has_pairing_support(const ScalarField& testfn, const GridSpec& g);

}  // namespace wrinklevar
