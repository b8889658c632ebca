#pragma once

#include "subdyn/heights.hpp"
#include "subdyn/parse.hpp"

#include <random>
#include <vector>

namespace subdyn::testing {

inline std::mt19937_64 make_rng(unsigned long seed = 42) { return std::mt19937_64(seed); }

inline Rational random_rational(std::mt19937_64& rng, long num_bound = 10, long den_bound = 10) {
    std::uniform_int_distribution<long> num(-num_bound, num_bound);
    std::uniform_int_distribution<long> den(1, den_bound);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline Scalar random_scalar(std::mt19937_64& rng, const FieldPtr& f) {
    switch (f->kind) {
    case FieldKind::Rationals: return Scalar::of_rational(f, random_rational(rng));
    case FieldKind::Prime: {
        std::uniform_int_distribution<long> d(0, static_cast<long>(f->p) - 1);
        return Scalar::of_int(f, d(rng));
    }
    case FieldKind::Function: {
        // denominator-free values keep printing grammar-exact
        std::uniform_int_distribution<int> nterms(1, 3);
        std::uniform_int_distribution<unsigned> e(0, 2);
        Polynomial num(f->param_ring);
        int k = nterms(rng);
        for (int i = 0; i < k; ++i) {
            Exponents ex(f->param_ring->nvars(), 0);
            for (auto& x : ex) x = e(rng);
            num = num + Polynomial::monomial(f->param_ring, ex,
                                             random_scalar(rng, f->base));
        }
        if (num.is_zero()) num = Polynomial::constant(f->param_ring, 1);
        return Scalar::from_fraction(f, num, Polynomial::constant(f->param_ring, 1));
    }
    }
    return Scalar::zero(f);
}

inline Polynomial random_poly(std::mt19937_64& rng, const RingPtr& ring, int max_terms = 5,
                              unsigned max_exp = 3) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<unsigned> e(0, max_exp);
    std::vector<Term> terms;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Exponents ex(ring->nvars(), 0);
        for (auto& x : ex) x = e(rng);
        terms.push_back({std::move(ex), random_scalar(rng, ring->field())});
    }
    return Polynomial::from_terms(ring, std::move(terms));
}

inline Polynomial random_homogeneous(std::mt19937_64& rng, const RingPtr& ring, unsigned deg,
                                     long coeff_bound = 3, bool allow_zero = false) {
    auto mons = monomials_of_degree(ring, deg);
    std::uniform_int_distribution<long> c(-coeff_bound, coeff_bound);
    while (true) {
        std::vector<Term> terms;
        for (const auto& m : mons) {
            long v = c(rng);
            if (v) terms.push_back({m, Scalar::of_int(ring->field(), v)});
        }
        Polynomial p = Polynomial::from_terms(ring, std::move(terms));
        if (!p.is_zero() || allow_zero) return p;
    }
}

inline RingPtr ring_q3() {
    return PolyRing::make(FieldDesc::rationals(), {"x", "y", "z"});
}

inline Morphism squaring_map_p2() {
    RingPtr r = ring_q3();
    return Morphism::make(r, {parse_poly("x^2", r), parse_poly("y^2", r), parse_poly("z^2", r)});
}

// f = (x^2, y^2 + z^2, z^2) over Q
inline Morphism example_map_q() {
    RingPtr r = ring_q3();
    return Morphism::make(
        r, {parse_poly("x^2", r), parse_poly("y^2 + z^2", r), parse_poly("z^2", r)});
}

// f = (z^2, y^2 + x*z + z^2, x^2) over F_2
inline Morphism example31_map() {
    RingPtr r = PolyRing::make(FieldDesc::prime(2), {"x", "y", "z"});
    return Morphism::make(r, {parse_poly("z^2", r), parse_poly("y^2 + x*z + z^2", r),
                              parse_poly("x^2", r)});
}

} // namespace subdyn::testing
