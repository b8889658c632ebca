#include "subdyn/poly.hpp"

#include "subdyn/gcd.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace subdyn {

Polynomial Polynomial::constant(const RingPtr& r, const Scalar& c) {
    Polynomial p(r);
    if (!c.is_zero()) p.terms_.push_back({Exponents(r->nvars(), 0), c});
    return p;
}

Polynomial Polynomial::constant(const RingPtr& r, long c) {
    return constant(r, Scalar::of_int(r->field(), c));
}

Polynomial Polynomial::variable(const RingPtr& r, std::size_t idx, unsigned exp) {
    if (idx >= r->nvars()) throw MathError("variable index out of range");
    Polynomial p(r);
    if (exp == 0) return constant(r, 1);
    Exponents e(r->nvars(), 0);
    e[idx] = exp;
    p.terms_.push_back({std::move(e), Scalar::one(r->field())});
    return p;
}

Polynomial Polynomial::monomial(const RingPtr& r, Exponents e, Scalar c) {
    if (e.size() != r->nvars()) throw MathError("exponent vector length mismatch");
    Polynomial p(r);
    if (!c.is_zero()) p.terms_.push_back({std::move(e), std::move(c)});
    return p;
}

Polynomial Polynomial::from_terms(RingPtr r, std::vector<Term> terms) {
    Polynomial p(std::move(r));
    p.terms_ = std::move(terms);
    p.normalize_terms();
    return p;
}

void Polynomial::normalize_terms() {
    for (const auto& t : terms_)
        if (t.exp.size() != ring_->nvars())
            throw MathError("exponent vector length mismatch");
    std::sort(terms_.begin(), terms_.end(), [this](const Term& a, const Term& b) {
        return ring_->cmp(a.exp, b.exp) > 0;
    });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().exp == t.exp)
            out.back().coeff = out.back().coeff + t.coeff;
        else
            out.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : out)
        if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    for (unsigned e : terms_[0].exp)
        if (e) return false;
    return true;
}

Scalar Polynomial::constant_value() const {
    if (!is_constant()) throw MathError("polynomial is not constant");
    if (terms_.empty()) return Scalar::zero(ring_->field());
    return terms_[0].coeff;
}

const Term& Polynomial::leading() const {
    if (terms_.empty()) throw MathError("leading term of zero polynomial");
    return terms_[0];
}

Polynomial Polynomial::operator-() const {
    Polynomial p(ring_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.exp, -t.coeff});
    return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (!ring_->same(*o.ring_)) throw MathError("polynomial arithmetic across rings");
    Polynomial p(ring_);
    p.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = ring_->cmp(terms_[i].exp, o.terms_[j].exp);
        if (c > 0) {
            p.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            p.terms_.push_back(o.terms_[j++]);
        } else {
            Scalar s = terms_[i].coeff + o.terms_[j].coeff;
            if (!s.is_zero()) p.terms_.push_back({terms_[i].exp, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) p.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) p.terms_.push_back(o.terms_[j]);
    return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (!ring_->same(*o.ring_)) throw MathError("polynomial arithmetic across rings");
    Polynomial p(ring_);
    if (terms_.empty() || o.terms_.empty()) return p;
    std::vector<Term> prod;
    prod.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) prod.push_back({exp_mul(a.exp, b.exp), a.coeff * b.coeff});
    return from_terms(ring_, std::move(prod));
}

Polynomial Polynomial::operator*(const Scalar& c) const {
    if (c.is_zero()) return Polynomial(ring_);
    Polynomial p(ring_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Scalar s = t.coeff * c;
        if (!s.is_zero()) p.terms_.push_back({t.exp, std::move(s)});
    }
    return p;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = constant(ring_, 1);
    Polynomial b = *this;
    while (e) {
        if (e & 1u) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

unsigned long Polynomial::total_degree() const {
    unsigned long d = 0;
    for (const auto& t : terms_) d = std::max(d, ring_->weighted_degree(t.exp));
    return d;
}

long Polynomial::degree_in(std::size_t var) const {
    long d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<long>(t.exp[var]));
    return terms_.empty() ? -1 : d;
}

bool Polynomial::uses_var(std::size_t var) const {
    for (const auto& t : terms_)
        if (t.exp[var]) return true;
    return false;
}

std::pair<bool, std::optional<unsigned long>> Polynomial::weighted_homogeneous() const {
    if (terms_.empty()) throw MathError("degree of the zero polynomial is undefined");
    unsigned long d = ring_->weighted_degree(terms_[0].exp);
    for (const auto& t : terms_)
        if (ring_->weighted_degree(t.exp) != d) return {false, std::nullopt};
    return {true, d};
}

Polynomial Polynomial::derivative(std::size_t var, unsigned order) const {
    if (var >= ring_->nvars()) throw MathError("variable index out of range");
    if (order == 0) return *this;
    Polynomial p(ring_);
    for (const auto& t : terms_) {
        if (t.exp[var] < order) continue;
        Scalar c = t.coeff;
        for (unsigned j = 0; j < order; ++j)
            c = c * Scalar::of_int(ring_->field(), static_cast<long>(t.exp[var] - j));
        if (c.is_zero()) continue;
        Exponents e = t.exp;
        e[var] -= order;
        p.terms_.push_back({std::move(e), std::move(c)});
    }
    return from_terms(ring_, std::move(p.terms_));
}

Scalar Polynomial::evaluate(const std::vector<Scalar>& point) const {
    if (point.size() != ring_->nvars()) throw MathError("evaluation point arity mismatch");
    Scalar acc = Scalar::zero(ring_->field());
    for (const auto& t : terms_) {
        Scalar v = t.coeff;
        for (std::size_t i = 0; i < point.size(); ++i) {
            for (unsigned j = 0; j < t.exp[i]; ++j) v = v * point[i];
        }
        acc = acc + v;
    }
    return acc;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != ring_->nvars()) throw MathError("substitution arity mismatch");
    const RingPtr& target = images.empty() ? ring_ : images[0].ring();
    for (const auto& im : images)
        if (!im.ring()->same(*target)) throw MathError("substitution images in different rings");
    if (!target->field()->same(*ring_->field()))
        throw MathError("substitution across coefficient fields");

    // power cache per variable
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power_of = [&](std::size_t i, unsigned e) -> const Polynomial& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
        while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
        return cache[e];
    };

    Polynomial acc(target);
    for (const auto& t : terms_) {
        Polynomial m = Polynomial::constant(target, t.coeff);
        for (std::size_t i = 0; i < images.size(); ++i)
            if (t.exp[i]) m = m * power_of(i, t.exp[i]);
        acc = acc + m;
    }
    return acc;
}

Polynomial Polynomial::map_ring(const RingPtr& new_ring, const std::vector<long>& var_map) const {
    if (var_map.size() != ring_->nvars()) throw MathError("variable map arity mismatch");
    Polynomial p(new_ring);
    for (const auto& t : terms_) {
        Exponents e(new_ring->nvars(), 0);
        for (std::size_t i = 0; i < t.exp.size(); ++i) {
            if (!t.exp[i]) continue;
            if (var_map[i] < 0)
                throw MathError("variable '" + ring_->vars()[i] + "' has no image in target ring");
            e[static_cast<std::size_t>(var_map[i])] = t.exp[i];
        }
        p.terms_.push_back({std::move(e), t.coeff});
    }
    return from_terms(new_ring, std::move(p.terms_));
}

Polynomial Polynomial::map_coeffs(const FieldPtr& new_field,
                                  const std::function<Scalar(const Scalar&)>& fn) const {
    RingPtr nr = new_field->same(*ring_->field())
                     ? ring_
                     : PolyRing::make(new_field, ring_->vars(), ring_->order(), ring_->weights());
    Polynomial p(nr);
    for (const auto& t : terms_) {
        Scalar c = fn(t.coeff);
        if (!c.is_zero()) p.terms_.push_back({t.exp, std::move(c)});
    }
    return from_terms(nr, std::move(p.terms_));
}

std::pair<Polynomial, Rational> rational_primitive(const Polynomial& p) {
    const auto& field = p.ring()->field();
    if (field->kind != FieldKind::Rationals)
        throw MathError("rational_primitive requires rational coefficients");
    if (p.is_zero()) return {p, Rational(1)};
    BigInt num_gcd = 0, den_lcm = 1;
    for (const auto& t : p.terms()) {
        Rational q = t.coeff.rational_value();
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    }
    Rational c(num_gcd, den_lcm);
    c.canonicalize();
    if (p.leading().coeff.rational_value() < 0) c = -c;
    Scalar ic = Scalar::of_rational(field, Rational(1) / c);
    return {p * ic, c};
}

Polynomial Polynomial::normalized() const {
    if (terms_.empty()) return *this;
    switch (ring_->field()->kind) {
    case FieldKind::Rationals: return rational_primitive(*this).first;
    case FieldKind::Prime: {
        Scalar lc = leading().coeff;
        return lc.is_one() ? *this : *this * lc.inverse();
    }
    case FieldKind::Function: {
        const FieldPtr& f = ring_->field();
        // Clear denominators: lcm over all coefficient denominators.
        Polynomial den_lcm = Polynomial::constant(f->param_ring, 1);
        for (const auto& t : terms_) den_lcm = poly_lcm(den_lcm, t.coeff.frac().den);
        Polynomial q = *this;
        if (!(den_lcm.is_constant() && den_lcm.constant_value().is_one()))
            q = q * Scalar::from_fraction(f, den_lcm, Polynomial::constant(f->param_ring, 1));
        // Joint polynomial content of the numerators.
        Polynomial content(f->param_ring);
        for (const auto& t : q.terms_)
            content = content.is_zero() ? t.coeff.frac().num : poly_gcd(content, t.coeff.frac().num);
        if (!(content.is_constant() && content.constant_value().is_one()))
            q = q * Scalar::from_fraction(f, Polynomial::constant(f->param_ring, 1), content);
        // Base-field normalization across all numerators.
        if (f->base->kind == FieldKind::Rationals) {
            BigInt num_gcd = 0, den_l = 1;
            for (const auto& t : q.terms_)
                for (const auto& pt : t.coeff.frac().num.terms()) {
                    Rational r = pt.coeff.rational_value();
                    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), r.get_num().get_mpz_t());
                    mpz_lcm(den_l.get_mpz_t(), den_l.get_mpz_t(), r.get_den().get_mpz_t());
                }
            Rational c(num_gcd, den_l);
            c.canonicalize();
            if (q.leading().coeff.frac().num.leading().coeff.rational_value() < 0) c = -c;
            if (c != 1) q = q * Scalar::of_rational(f, Rational(1) / c);
        } else {
            Scalar lc = q.leading().coeff.frac().num.leading().coeff;
            if (!lc.is_one()) {
                Scalar il = Scalar::of_rational(
                    f, Rational(static_cast<long>(fp::inv(lc.residue_value(), f->base->p))));
                q = q * il;
            }
        }
        return q;
    }
    }
    return *this;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (!ring_ || !o.ring_) return ring_ == o.ring_;
    if (!ring_->same(*o.ring_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exp != o.terms_[i].exp || !(terms_[i].coeff == o.terms_[i].coeff))
            return false;
    return true;
}

namespace {

void append_power(std::string& s, const std::string& var, unsigned e, bool& first) {
    if (!e) return;
    if (!first) s += "*";
    first = false;
    s += var;
    if (e != 1) {
        s += "^";
        s += std::to_string(e);
    }
}

// One display term: rational (or residue) magnitude, optional parameter
// powers, main-variable powers.
struct DisplayTerm {
    bool negative = false;
    std::string body;
};

DisplayTerm display_term(const Rational& coeff, const std::vector<std::string>* param_vars,
                         const Exponents* param_exp, const std::vector<std::string>& vars,
                         const Exponents& exp) {
    DisplayTerm dt;
    Rational c = coeff;
    if (c < 0) {
        dt.negative = true;
        c = -c;
    }
    bool has_factor = false;
    if (param_exp)
        for (unsigned e : *param_exp) has_factor |= e != 0;
    for (unsigned e : exp) has_factor |= e != 0;

    std::string s;
    bool first = true;
    if (c != 1 || !has_factor) {
        s += c.get_str();
        first = false;
    }
    if (param_exp)
        for (std::size_t i = 0; i < param_exp->size(); ++i)
            append_power(s, (*param_vars)[i], (*param_exp)[i], first);
    for (std::size_t i = 0; i < exp.size(); ++i) append_power(s, vars[i], exp[i], first);
    dt.body = std::move(s);
    return dt;
}

DisplayTerm display_term_fp(unsigned long residue, const std::vector<std::string>& vars,
                            const Exponents& exp) {
    DisplayTerm dt;
    bool has_factor = false;
    for (unsigned e : exp) has_factor |= e != 0;
    std::string s;
    bool first = true;
    if (residue != 1 || !has_factor) {
        s += std::to_string(residue);
        first = false;
    }
    for (std::size_t i = 0; i < exp.size(); ++i) append_power(s, vars[i], exp[i], first);
    dt.body = std::move(s);
    return dt;
}

} // namespace

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::vector<DisplayTerm> parts;
    const auto& vars = ring_->vars();
    const FieldPtr& f = ring_->field();
    for (const auto& t : terms_) {
        switch (f->kind) {
        case FieldKind::Rationals:
            parts.push_back(display_term(t.coeff.rational_value(), nullptr, nullptr, vars, t.exp));
            break;
        case FieldKind::Prime:
            parts.push_back(display_term_fp(t.coeff.residue_value(), vars, t.exp));
            break;
        case FieldKind::Function: {
            const FracData& fr = t.coeff.frac();
            if (!(fr.den.is_constant() && fr.den.constant_value().is_one())) {
                // Not expressible in the grammar; readable fallback.
                DisplayTerm dt;
                dt.body = "(" + fr.num.str() + ")/(" + fr.den.str() + ")";
                bool first = false;
                std::string s = dt.body;
                append_power(s, "", 0, first);
                for (std::size_t i = 0; i < t.exp.size(); ++i)
                    append_power(s, vars[i], t.exp[i], first);
                dt.body = std::move(s);
                parts.push_back(std::move(dt));
                break;
            }
            const auto& pvars = f->param_ring->vars();
            for (const auto& pt : fr.num.terms()) {
                if (f->base->kind == FieldKind::Rationals)
                    parts.push_back(display_term(pt.coeff.rational_value(), &pvars, &pt.exp, vars,
                                                 t.exp));
                else {
                    DisplayTerm dt = display_term_fp(pt.coeff.residue_value(), pvars, pt.exp);
                    std::string s = dt.body;
                    bool first = false;
                    for (std::size_t i = 0; i < t.exp.size(); ++i)
                        append_power(s, vars[i], t.exp[i], first);
                    dt.body = std::move(s);
                    parts.push_back(std::move(dt));
                }
            }
            break;
        }
        }
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i == 0) {
            if (parts[i].negative) out += "-";
        } else {
            out += parts[i].negative ? " - " : " + ";
        }
        out += parts[i].body;
    }
    return out;
}

std::size_t Polynomial::hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (const auto& t : terms_) {
        for (unsigned e : t.exp) h = (h ^ e) * 1099511628211ULL;
        h = (h ^ t.coeff.hash()) * 1099511628211ULL;
    }
    return h;
}

Polynomial poly_add_scaled(const Polynomial& b, const Polynomial& a, const Scalar& c,
                           const Exponents& shift) {
    Polynomial scaled(a.ring());
    for (const auto& t : a.terms()) {
        Scalar s = t.coeff * c;
        if (!s.is_zero()) scaled.terms_.push_back({exp_mul(t.exp, shift), std::move(s)});
    }
    // shifting by a monomial preserves the term order
    return b + scaled;
}

std::vector<Exponents> monomials_of_degree(const RingPtr& r, unsigned deg) {
    std::vector<Exponents> out;
    Exponents cur(r->nvars(), 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == r->nvars()) {
            cur[i] = left;
            out.push_back(cur);
            cur[i] = 0;
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
        cur[i] = 0;
    };
    rec(0, deg);
    std::sort(out.begin(), out.end(),
              [&](const Exponents& a, const Exponents& b) { return r->cmp(a, b) > 0; });
    return out;
}

} // namespace subdyn
