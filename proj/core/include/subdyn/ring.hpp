#pragma once

#include "subdyn/field.hpp"

#include <string>
#include <vector>

namespace subdyn {

enum class MonomialOrder { Lex, GrevLex };

using Exponents = std::vector<unsigned>;

// Variable names, monomial order and per-variable positive weights over a
// coefficient field. Shared immutably by every polynomial in the ring.
class PolyRing {
public:
    static RingPtr make(FieldPtr field, std::vector<std::string> vars,
                        MonomialOrder order = MonomialOrder::GrevLex,
                        std::vector<unsigned> weights = {});

    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    MonomialOrder order() const { return order_; }
    const std::vector<unsigned>& weights() const { return weights_; }
    const FieldPtr& field() const { return field_; }
    bool has_unit_weights() const { return unit_weights_; }

    long index_of(const std::string& name) const; // -1 when absent
    unsigned long weighted_degree(const Exponents& e) const;

    // Monomial comparison in the ring order: >0 iff a > b.
    int cmp(const Exponents& a, const Exponents& b) const;

    bool same(const PolyRing& other) const;
    std::string describe() const;

    PolyRing(FieldPtr field, std::vector<std::string> vars, MonomialOrder order,
             std::vector<unsigned> weights);

private:
    FieldPtr field_;
    std::vector<std::string> vars_;
    MonomialOrder order_;
    std::vector<unsigned> weights_;
    bool unit_weights_ = true;
};

inline Exponents exp_mul(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// Componentwise a - b; requires divisibility.
inline Exponents exp_div(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline bool exp_divides(const Exponents& b, const Exponents& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] > a[i]) return false;
    return true;
}

inline Exponents exp_lcm(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline Exponents exp_gcd(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
    return r;
}

} // namespace subdyn
