#pragma once

#include "subdyn/dynamics.hpp"

namespace subdyn {

struct ResiduePeriodReport {
    unsigned m = 0;    // period over the residue field
    unsigned tail = 0; // tail of the reduced orbit
    std::vector<BigInt> degrees_mod_p;
    std::vector<BigInt> degrees_rational;
    bool degrees_match = true; // per-step degree agreement over the compared range
    OrbitReport orbit;
};

// Period of the reduced variety under the reduced morphism, plus the per-step
// degree comparison against the rational orbit.
ResiduePeriodReport residue_period(const Morphism& f, const Subvariety& X, unsigned long p,
                                   unsigned max_steps = 64, const GroebnerBudget& budget = {});

// Number of candidate Chow forms over F_q in codimension t and degree <= D:
// sum over degrees of projective coefficient-space point counts.
BigInt lemma_m_count_bound(const BigInt& q, unsigned N, unsigned t, unsigned D);

struct EBound {
    Real bound;
    BigInt floor_value;
};

// e <= 1 + log2(v) for odd p; the golden-ratio expression for p = 2.
EBound e_bound(unsigned long p, unsigned long v);

struct GroupCounts {
    BigInt gl;  // #GL_{M+1}(F_q)
    BigInt pn;  // #P^N(F_q)
};

GroupCounts group_counts(const BigInt& q, unsigned M, unsigned N);

// M = C(N+D, N) - 1.
BigInt veronese_dimension(unsigned N, unsigned D);

// Multiplicative order of the Jacobian multiplier of psi^{n_P} at the
// periodic point P, inside GL over F_p. nullopt when the multiplier is
// singular.
std::optional<BigInt> multiplier_order(const Morphism& psi, const std::vector<Scalar>& P,
                                       unsigned n_P);

struct PeriodBoundInput {
    unsigned long p = 2;
    unsigned long v = 1;        // ramification of p
    unsigned m = 1;             // period over the residue field
    std::optional<BigInt> r;    // multiplier order; #GL cap when absent
    unsigned long s = 1;        // extension exponent
    unsigned N = 1, D = 1, t = 1, d = 2;
};

struct PeriodBoundReport {
    PeriodBoundInput input;
    Real e_real;
    BigInt e_floor;
    BigInt M;          // Veronese dimension for (N, D)
    BigInt gl;         // #GL_{M+1}(F_p)
    BigInt pn;         // #P^N(F_p)
    BigInt used_r;
    BigInt bound;      // s * m * r * p^floor(e)
    BigInt coarse_cap; // #P^N * #GL * p^floor(e)

    std::string serialize() const;
};

PeriodBoundReport period_bound(const PeriodBoundInput& input);

} // namespace subdyn
