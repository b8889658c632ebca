#include "subdyn/ring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace subdyn {

PolyRing::PolyRing(FieldPtr field, std::vector<std::string> vars, MonomialOrder order,
                   std::vector<unsigned> weights)
    : field_(std::move(field)), vars_(std::move(vars)), order_(order),
      weights_(std::move(weights)) {}

RingPtr PolyRing::make(FieldPtr field, std::vector<std::string> vars, MonomialOrder order,
                       std::vector<unsigned> weights) {
    if (!field) throw MathError("ring: null coefficient field");
    if (vars.empty()) throw MathError("ring: at least one variable required");
    std::set<std::string> seen;
    for (const auto& v : vars) {
        if (v.empty()) throw MathError("ring: empty variable name");
        if (!seen.insert(v).second) throw MathError("ring: duplicate variable '" + v + "'");
        if (field->kind == FieldKind::Function) {
            for (const auto& par : field->parameters)
                if (par == v)
                    throw MathError("ring: variable '" + v + "' collides with a field parameter");
        }
    }
    if (weights.empty()) weights.assign(vars.size(), 1);
    if (weights.size() != vars.size())
        throw MathError("ring: weight count does not match variable count");
    for (unsigned w : weights)
        if (w == 0) throw MathError("ring: weights must be strictly positive");

    auto r = std::make_shared<PolyRing>(std::move(field), std::move(vars), order,
                                        std::move(weights));
    auto* self = const_cast<PolyRing*>(r.get());
    self->unit_weights_ =
        std::all_of(r->weights_.begin(), r->weights_.end(), [](unsigned w) { return w == 1; });
    return r;
}

long PolyRing::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<long>(i);
    return -1;
}

unsigned long PolyRing::weighted_degree(const Exponents& e) const {
    unsigned long d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<unsigned long>(e[i]) * weights_[i];
    return d;
}

int PolyRing::cmp(const Exponents& a, const Exponents& b) const {
    if (order_ == MonomialOrder::Lex) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
    }
    // grevlex with weights: weighted degree first, then smaller last
    // differing exponent wins
    unsigned long da = weighted_degree(a), db = weighted_degree(b);
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
}

bool PolyRing::same(const PolyRing& other) const {
    if (this == &other) return true;
    return order_ == other.order_ && vars_ == other.vars_ && weights_ == other.weights_ &&
           field_->same(*other.field_);
}

std::string PolyRing::describe() const {
    std::ostringstream os;
    os << field_->describe() << "[";
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (i) os << ",";
        os << vars_[i];
        if (weights_[i] != 1) os << ":" << weights_[i];
    }
    os << "]" << (order_ == MonomialOrder::Lex ? "lex" : "grevlex");
    return os.str();
}

} // namespace subdyn
