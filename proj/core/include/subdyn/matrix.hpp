#pragma once

#include "subdyn/poly.hpp"

#include <vector>

namespace subdyn {

// Determinant of a square Scalar matrix by Gaussian elimination (field ops).
Scalar det_field(std::vector<std::vector<Scalar>> m, const FieldPtr& field);

// Determinant of a square polynomial matrix by fraction-free Bareiss
// elimination; all divisions are exact in the ring.
Polynomial det_bareiss(std::vector<std::vector<Polynomial>> m, const RingPtr& ring);

} // namespace subdyn
