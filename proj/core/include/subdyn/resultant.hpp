#pragma once

#include "subdyn/poly.hpp"
#include "subdyn/real.hpp"

namespace subdyn {

struct MacaulayOptions {
    unsigned max_retries = 6; // deterministic unipotent coordinate shears
};

// The Macaulay resultant of nvars homogeneous forms in the nvars ring
// variables, via the classical quotient of determinants. Exact over the
// coefficient field (parameter fields give a polynomial in the parameters).
// Zero iff the system has a common projective zero over the closure.
// Scaling is the classical one: Res(x_0^a, ..., x_n^c) = 1.
Scalar macaulay_resultant(const std::vector<Polynomial>& forms,
                          const MacaulayOptions& opts = {});

// ln of the Wustholz coefficient bound for Res_{D,d,...,d}:
// B + ln(B!) with B = C(D + N*d^N + 1, N).
Real wustholz_height_bound(unsigned N, unsigned D, unsigned d);

// Z_k: the Macaulay resultant of the order-k partials of a form whose
// coefficients live in a parameter field. Vanishing in parameter space
// contains every specialization where the form degenerates to the lower
// degree class. When the partials are all constant the locus test
// degenerates: any unit partial gives 1, otherwise the product of the nonzero
// constant partials is returned.
Scalar discriminant_locus(const Polynomial& image_form, unsigned k,
                          const MacaulayOptions& opts = {});

} // namespace subdyn
