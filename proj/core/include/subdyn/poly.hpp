#pragma once

#include "subdyn/ring.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace subdyn {

struct Term {
    Exponents exp;
    Scalar coeff;
};

// Sparse multivariate polynomial. Terms are kept sorted descending in the
// ring's monomial order with no zero coefficients, so printing, hashing and
// equality are deterministic.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial zero(const RingPtr& r) { return Polynomial(r); }
    static Polynomial constant(const RingPtr& r, const Scalar& c);
    static Polynomial constant(const RingPtr& r, long c);
    static Polynomial variable(const RingPtr& r, std::size_t idx, unsigned exp = 1);
    static Polynomial monomial(const RingPtr& r, Exponents e, Scalar c);
    static Polynomial from_terms(RingPtr r, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool valid() const { return ring_ != nullptr; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Scalar constant_value() const;
    const Term& leading() const;
    std::size_t nterms() const { return terms_.size(); }

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Scalar& c) const;
    Polynomial pow(unsigned e) const;

    unsigned long total_degree() const; // weighted; zero polynomial -> 0
    long degree_in(std::size_t var) const;
    bool uses_var(std::size_t var) const;
    // (is_homogeneous, common weighted degree); throws MathError on zero input.
    std::pair<bool, std::optional<unsigned long>> weighted_homogeneous() const;

    Polynomial derivative(std::size_t var, unsigned order = 1) const;
    Scalar evaluate(const std::vector<Scalar>& point) const;
    // Substitutes images[i] for variable i; images live in a common ring.
    Polynomial substitute(const std::vector<Polynomial>& images) const;
    // Re-homes the polynomial: var_map[i] is the index of old variable i in
    // new_ring, or -1 when unused (then the variable must not occur).
    Polynomial map_ring(const RingPtr& new_ring, const std::vector<long>& var_map) const;
    Polynomial map_coeffs(const FieldPtr& new_field,
                          const std::function<Scalar(const Scalar&)>& fn) const;

    // Canonical generator normalization: monic over F_p; integer-primitive
    // with positive leading coefficient over Q; denominator-free jointly
    // primitive coefficients over function fields.
    Polynomial normalized() const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Grammar-conformant text (function-field coefficients are expanded;
    // requires denominator-free coefficients, as produced by normalized()).
    std::string str() const;
    std::size_t hash() const;

private:
    RingPtr ring_;
    std::vector<Term> terms_;

    void normalize_terms();
    friend Polynomial poly_add_scaled(const Polynomial& a, const Polynomial& b,
                                      const Scalar& c, const Exponents& shift);
};

struct FracData {
    Polynomial num;
    Polynomial den;
};

// b + c * x^shift * a, the Gröbner reduction workhorse.
Polynomial poly_add_scaled(const Polynomial& b, const Polynomial& a, const Scalar& c,
                           const Exponents& shift);

// All degree-`deg` exponent vectors of a ring, descending in the ring order.
std::vector<Exponents> monomials_of_degree(const RingPtr& r, unsigned deg);

// Rational content normalization for polynomials over Q (or over a function
// field's base Q ring): returns the factor c such that poly == c * primitive.
std::pair<Polynomial, Rational> rational_primitive(const Polynomial& p);

} // namespace subdyn
