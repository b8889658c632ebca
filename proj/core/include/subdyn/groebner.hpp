#pragma once

#include "subdyn/poly.hpp"

#include <memory>
#include <mutex>
#include <vector>

namespace subdyn {

// Global guard against runaway Buchberger runs: exceeding it raises
// ResourceError, never a wrong answer.
struct GroebnerBudget {
    unsigned long max_pairs = 1000000;
};

// An ideal with a lazily computed, write-once reduced Gröbner basis cache.
// Copies share the cache.
class Ideal {
public:
    Ideal() = default;
    Ideal(RingPtr ring, std::vector<Polynomial> gens);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& gens() const { return gens_; }

    const std::vector<Polynomial>& groebner(const GroebnerBudget& budget = {}) const;

private:
    struct Cache;
    RingPtr ring_;
    std::vector<Polynomial> gens_;
    std::shared_ptr<Cache> cache_;
};

// Buchberger with normal pair selection, the coprime-lead and chain criteria,
// and content-stripped intermediates. The returned basis is fully
// inter-reduced, normalized (monic over F_p, primitive over Q and parameter
// fields) and sorted ascending by leading monomial.
std::vector<Polynomial> reduced_groebner(const RingPtr& ring, std::vector<Polynomial> gens,
                                         const GroebnerBudget& budget = {});

// Full normal form of p against a (not necessarily Gröbner) basis.
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis);

// Elimination ideal: drops the named variables via a lex order placing them
// first; the resulting ideal lives in the shrunk ring (keeping the source
// ring's order and weights on the surviving variables).
Ideal eliminate(const Ideal& I, const std::vector<std::string>& drop_vars,
                const GroebnerBudget& budget = {});

bool ideal_membership(const Polynomial& p, const Ideal& I, const GroebnerBudget& budget = {});

struct DimensionDegree {
    long dimension = -1; // projective dimension; -1 for a (projectively) empty set
    BigInt degree = 1;
};

// Projective dimension and degree from the Hilbert series of the leading-term
// ideal of a graded (grevlex) basis. Requires homogeneous generators in a
// unit-weight ring and a proper ideal.
DimensionDegree dimension_degree(const Ideal& I, const GroebnerBudget& budget = {});

// Same, for generators that are already a grevlex reduced basis.
DimensionDegree dimension_degree_of_basis(const RingPtr& ring,
                                          const std::vector<Polynomial>& basis);

} // namespace subdyn
