#pragma once

#include "subdyn/dynamics.hpp"

namespace subdyn {

// The form in dual (u_i) or Plücker (p_{i0...ik}) coordinates cutting out the
// (N-k-1)-planes meeting a k-dimensional variety.
struct ChowForm {
    enum class Kind { Hypersurface, Point, General };
    Kind kind = Kind::Hypersurface;
    int ambient_N = 0;
    long dim_k = 0;
    BigInt degree_D = 1;
    Polynomial form; // in the dual ring
};

ChowForm chow_form(const Subvariety& X, const GroebnerBudget& budget = {});

// The coefficient-space map a degree-d morphism induces on degree-D
// hypersurface coefficients (Chow coordinates in codimension 1), expressed in
// parameter variables ordered like the grevlex-descending monomial basis.
struct InducedMap {
    std::size_t source_dim = 0;       // tau(D) - 1
    std::size_t target_dim = 0;       // tau(D') - 1
    unsigned source_form_degree = 1;  // D
    unsigned target_form_degree = 1;  // D'
    unsigned algebraic_degree = 1;    // d^{N-t+1}
    RingPtr coeff_ring;               // coefficient-space coordinates
    std::vector<std::string> main_vars;
    std::vector<Polynomial> coords;
    bool used_groebner_fallback = false;
};

InducedMap induced_chow_map(const Morphism& f, unsigned D, unsigned t,
                            const MacaulayOptions& opts = {},
                            const GroebnerBudget& budget = {});

// Restricts the induced map to a self-map of a subvariety of coefficient
// space containing X_coeffs, shrinking by image-closure intersections until
// the ideal-containment certificate holds.
struct SelfMapWitness {
    std::vector<Polynomial> map_coords; // psi, degree-preserving on Y
    Subvariety restricted;              // Y-tilde
    unsigned shrink_steps = 0;
    bool certified = false;
};

SelfMapWitness self_map_restriction(const InducedMap& phi, const Subvariety& Y,
                                    const std::vector<Scalar>& X_coeffs,
                                    const GroebnerBudget& budget = {});

// deg(Y-tilde) Bézout bound: prod_{i=0}^{j-1} (d^{mt})^i (M+1)((d^M D - d^m)(N-t)+1);
// j = 0 gives the base factor.
BigInt bezout_degree_bound(unsigned M, unsigned D, unsigned d, unsigned m, unsigned t,
                           unsigned N, unsigned j);

// Component extraction for discriminant loci: unit, coordinate-hyperplane
// factors, rational linear factors (found by line restriction and verified by
// exact division), and the undesignated square-free remainder.
struct ComponentSplit {
    Scalar unit;
    std::vector<std::pair<Polynomial, unsigned>> monomials;
    std::vector<std::pair<Polynomial, unsigned>> linears;
    std::vector<std::pair<Polynomial, unsigned>> remainder;
};

ComponentSplit extract_components(const Polynomial& Z);

} // namespace subdyn
