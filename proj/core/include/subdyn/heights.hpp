#pragma once

#include "subdyn/chow.hpp"

namespace subdyn {

// Absolute logarithmic projective height of the coefficient vector: clear
// denominators and integer content, then ln max |coefficient|.
Real poly_height(const Polynomial& p);

// h(X) = h(Ch(X)).
Real variety_height(const Subvariety& X, const GroebnerBudget& budget = {});

struct HeightEstimate {
    Real value;
    Real error_bound;
    unsigned iterations = 0;
    std::vector<BigInt> degree_sequence;
};

// Every sub-quantity of the explicit height-difference constant, printable as
// a key=value block. The default evaluator follows the general formula; the
// literal mode re-derives a published hand-computation variant (coarser
// roundings, smaller binomial) and is reported separately.
struct ConstantReport {
    unsigned N = 0, d = 0, D = 0;
    Real hf;
    BigInt tau_D;
    BigInt tau_Dprime;
    BigInt e_D;
    Real wustholz_log;
    Real upper_constant;
    Real lower_constant;
    Real lower_constant_literal; // set when literal mode was requested
    bool literal_mode = false;
    Real combined; // max(upper, lower) for the mode in effect

    // slope/intercept of the hf-linear forms, for auditability
    Real upper_slope, upper_intercept;
    Real lower_slope, lower_intercept;
    Real literal_slope, literal_intercept;

    std::string serialize() const;
};

ConstantReport height_constant_C(unsigned N, unsigned d, unsigned D, const Real& hf,
                                 bool literal_mode = false);

// C*D / ((d-1) * d^(N-t-1)).
Real height_difference_bound(const Real& C, unsigned D, unsigned d, unsigned N, unsigned t);

// Degree-normalized limit estimate after `iters` forward images, with the
// Cauchy tail C*deg(X)^2/(d^m (1-1/d)) as the error bound.
HeightEstimate canonical_height(const Morphism& f, const Subvariety& X, unsigned iters,
                                const GroebnerBudget& budget = {});

struct PreperiodicHit {
    Subvariety variety;
    OrbitReport orbit;
    std::string generator; // canonical generator text
};

struct PreperiodicSearchResult {
    std::vector<PreperiodicHit> hits;
    unsigned long candidates = 0;
    bool budget_exceeded = false;
};

// Enumerates integer-coefficient hypersurfaces of degree <= D_max with
// coefficients in [-coeff_bound, coeff_bound] (projectively deduplicated) and
// reports every orbit that repeats within `iters` steps. The canonical-height
// prefilter drops candidates whose estimate minus error bound exceeds zero.
PreperiodicSearchResult preperiodic_search(const Morphism& f, unsigned D_max,
                                           unsigned coeff_bound, unsigned iters,
                                           unsigned threads = 1,
                                           unsigned long max_candidates = 2000000,
                                           const BigInt& degree_cap = 0,
                                           const GroebnerBudget& budget = {});

} // namespace subdyn
