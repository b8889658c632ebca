#include "subdyn/field.hpp"
#include "subdyn/gcd.hpp"
#include "subdyn/poly.hpp"
#include "subdyn/ring.hpp"

#include <functional>
#include <sstream>

namespace subdyn {

namespace fp {

unsigned long add(unsigned long a, unsigned long b, unsigned long p) {
    unsigned long s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
}

unsigned long sub(unsigned long a, unsigned long b, unsigned long p) {
    return a >= b ? a - b : a + (p - b);
}

unsigned long mul(unsigned long a, unsigned long b, unsigned long p) {
    return static_cast<unsigned long>((static_cast<unsigned __int128>(a) * b) % p);
}

unsigned long pow(unsigned long a, unsigned long e, unsigned long p) {
    unsigned long r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1UL) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

unsigned long inv(unsigned long a, unsigned long p) {
    if (a % p == 0) throw MathError("division by zero in F_p");
    return pow(a, p - 2, p);
}

unsigned long of_rational(const Rational& q0, unsigned long p) {
    Rational q = q0;
    q.canonicalize();
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class nm = num % pz;
    if (nm < 0) nm += pz;
    mpz_class dm = den % pz;
    if (dm == 0) throw MathError("denominator vanishes mod p");
    return mul(nm.get_ui(), inv(dm.get_ui(), p), p);
}

} // namespace fp

FieldPtr FieldDesc::rationals() {
    static FieldPtr q = std::make_shared<FieldDesc>();
    return q;
}

FieldPtr FieldDesc::prime(unsigned long p) {
    if (p < 2 || !is_prime(BigInt(p))) throw MathError("prime field: modulus is not prime");
    auto f = std::make_shared<FieldDesc>();
    f->kind = FieldKind::Prime;
    f->p = p;
    return f;
}

FieldPtr FieldDesc::function(std::vector<std::string> parameters, FieldPtr base) {
    if (!base) base = rationals();
    if (base->kind == FieldKind::Function)
        throw MathError("function field: nested parameter fields are not supported");
    if (parameters.empty()) throw MathError("function field: no parameters given");
    auto f = std::make_shared<FieldDesc>();
    f->kind = FieldKind::Function;
    f->parameters = parameters;
    f->base = base;
    f->param_ring = PolyRing::make(base, std::move(parameters), MonomialOrder::GrevLex);
    return f;
}

bool FieldDesc::same(const FieldDesc& other) const {
    if (this == &other) return true;
    if (kind != other.kind) return false;
    switch (kind) {
    case FieldKind::Rationals: return true;
    case FieldKind::Prime: return p == other.p;
    case FieldKind::Function:
        return parameters == other.parameters && base->same(*other.base);
    }
    return false;
}

unsigned long FieldDesc::characteristic() const {
    switch (kind) {
    case FieldKind::Rationals: return 0;
    case FieldKind::Prime: return p;
    case FieldKind::Function: return base->characteristic();
    }
    return 0;
}

std::string FieldDesc::describe() const {
    switch (kind) {
    case FieldKind::Rationals: return "QQ";
    case FieldKind::Prime: return "GF(" + std::to_string(p) + ")";
    case FieldKind::Function: {
        std::string s = base->describe() + "(";
        for (std::size_t i = 0; i < parameters.size(); ++i) {
            if (i) s += ",";
            s += parameters[i];
        }
        return s + ")";
    }
    }
    return "?";
}

void Scalar::check_same_field(const Scalar& o) const {
    if (!field_ || !o.field_ || !field_->same(*o.field_))
        throw MathError("scalar arithmetic across different fields");
}

Scalar Scalar::zero(const FieldPtr& f) {
    Scalar s;
    s.field_ = f;
    if (f->kind == FieldKind::Function) {
        auto d = std::make_shared<FracData>();
        d->num = Polynomial::zero(f->param_ring);
        d->den = Polynomial::constant(f->param_ring, 1);
        s.frac_ = d;
    }
    return s;
}

Scalar Scalar::one(const FieldPtr& f) { return of_int(f, 1); }

Scalar Scalar::of_int(const FieldPtr& f, long v) { return of_rational(f, Rational(v)); }

Scalar Scalar::of_rational(const FieldPtr& f, const Rational& q) {
    Scalar s;
    s.field_ = f;
    switch (f->kind) {
    case FieldKind::Rationals:
        s.q_ = q;
        s.q_.canonicalize();
        break;
    case FieldKind::Prime: s.r_ = fp::of_rational(q, f->p); break;
    case FieldKind::Function: {
        auto d = std::make_shared<FracData>();
        d->num = Polynomial::constant(f->param_ring, Scalar::of_rational(f->base, q));
        d->den = Polynomial::constant(f->param_ring, 1);
        s.frac_ = d;
        break;
    }
    }
    return s;
}

Scalar Scalar::parameter(const FieldPtr& f, std::size_t index, unsigned exp) {
    if (f->kind != FieldKind::Function) throw MathError("parameter of a non-parameter field");
    if (index >= f->parameters.size()) throw MathError("parameter index out of range");
    Scalar s;
    s.field_ = f;
    auto d = std::make_shared<FracData>();
    d->num = Polynomial::variable(f->param_ring, index, exp);
    d->den = Polynomial::constant(f->param_ring, 1);
    s.frac_ = d;
    return s;
}

Scalar Scalar::from_fraction(const FieldPtr& f, Polynomial num, Polynomial den) {
    if (f->kind != FieldKind::Function) throw MathError("fraction in a non-parameter field");
    if (den.is_zero()) throw MathError("division by zero in a coefficient");
    if (num.is_zero()) return zero(f);

    Polynomial g = poly_gcd(num, den);
    if (!g.is_constant() || !(g.constant_value().is_one())) {
        num = exact_divide(num, g);
        den = exact_divide(den, g);
    }
    // Fix the denominator representative: integer-primitive with positive
    // leading coefficient over Q, monic over F_p; fold the factor into num.
    if (f->base->kind == FieldKind::Rationals) {
        auto [prim, c] = rational_primitive(den);
        den = prim;
        if (c != 1) num = num * Scalar::of_rational(f->base, Rational(1) / c);
    } else {
        Scalar lc = den.leading().coeff;
        if (!lc.is_one()) {
            Scalar il = lc.inverse();
            den = den * il;
            num = num * il;
        }
    }
    Scalar s;
    s.field_ = f;
    auto d = std::make_shared<FracData>();
    d->num = std::move(num);
    d->den = std::move(den);
    s.frac_ = d;
    return s;
}

bool Scalar::is_zero() const {
    switch (field_->kind) {
    case FieldKind::Rationals: return q_ == 0;
    case FieldKind::Prime: return r_ == 0;
    case FieldKind::Function: return frac_->num.is_zero();
    }
    return false;
}

bool Scalar::is_one() const {
    switch (field_->kind) {
    case FieldKind::Rationals: return q_ == 1;
    case FieldKind::Prime: return r_ == 1;
    case FieldKind::Function:
        return frac_->num == frac_->den;
    }
    return false;
}

bool Scalar::is_base_constant() const {
    if (field_->kind != FieldKind::Function) return true;
    return frac_->num.is_constant() && frac_->den.is_constant();
}

Rational Scalar::rational_value() const {
    if (field_->kind == FieldKind::Rationals) return q_;
    if (field_->kind == FieldKind::Function && field_->base->kind == FieldKind::Rationals &&
        is_base_constant()) {
        Rational n = frac_->num.constant_value().rational_value();
        Rational d = frac_->den.constant_value().rational_value();
        Rational r = n / d;
        return r;
    }
    throw MathError("scalar is not a rational constant");
}

unsigned long Scalar::residue_value() const {
    if (field_->kind == FieldKind::Prime) return r_;
    if (field_->kind == FieldKind::Function && field_->base->kind == FieldKind::Prime &&
        is_base_constant()) {
        unsigned long n = frac_->num.constant_value().residue_value();
        unsigned long d = frac_->den.constant_value().residue_value();
        return fp::mul(n, fp::inv(d, field_->base->p), field_->base->p);
    }
    throw MathError("scalar is not a prime-field constant");
}

const FracData& Scalar::frac() const {
    if (field_->kind != FieldKind::Function) throw MathError("scalar is not a fraction");
    return *frac_;
}

Scalar Scalar::operator-() const {
    Scalar s(*this);
    switch (field_->kind) {
    case FieldKind::Rationals: s.q_ = -q_; break;
    case FieldKind::Prime: s.r_ = r_ ? field_->p - r_ : 0; break;
    case FieldKind::Function: {
        auto d = std::make_shared<FracData>();
        d->num = -frac_->num;
        d->den = frac_->den;
        s.frac_ = d;
        break;
    }
    }
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    Scalar s;
    s.field_ = field_;
    switch (field_->kind) {
    case FieldKind::Rationals: s.q_ = q_ + o.q_; break;
    case FieldKind::Prime: s.r_ = fp::add(r_, o.r_, field_->p); break;
    case FieldKind::Function: {
        const auto& a = *frac_;
        const auto& b = *o.frac_;
        Polynomial g = poly_gcd(a.den, b.den);
        Polynomial da = exact_divide(a.den, g);
        Polynomial db = exact_divide(b.den, g);
        return from_fraction(field_, a.num * db + b.num * da, a.den * db);
    }
    }
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    Scalar s;
    s.field_ = field_;
    switch (field_->kind) {
    case FieldKind::Rationals: s.q_ = q_ * o.q_; break;
    case FieldKind::Prime: s.r_ = fp::mul(r_, o.r_, field_->p); break;
    case FieldKind::Function: {
        const auto& a = *frac_;
        const auto& b = *o.frac_;
        if (a.num.is_zero() || b.num.is_zero()) return zero(field_);
        Polynomial g1 = poly_gcd(a.num, b.den);
        Polynomial g2 = poly_gcd(b.num, a.den);
        return from_fraction(field_, exact_divide(a.num, g1) * exact_divide(b.num, g2),
                             exact_divide(a.den, g2) * exact_divide(b.den, g1));
    }
    }
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw MathError("inverse of zero");
    Scalar s;
    s.field_ = field_;
    switch (field_->kind) {
    case FieldKind::Rationals: s.q_ = 1 / q_; break;
    case FieldKind::Prime: s.r_ = fp::inv(r_, field_->p); break;
    case FieldKind::Function: return from_fraction(field_, frac_->den, frac_->num);
    }
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
    if (!field_ || !o.field_ || !field_->same(*o.field_)) return false;
    switch (field_->kind) {
    case FieldKind::Rationals: return q_ == o.q_;
    case FieldKind::Prime: return r_ == o.r_;
    case FieldKind::Function:
        return frac_->num == o.frac_->num && frac_->den == o.frac_->den;
    }
    return false;
}

std::string Scalar::str() const {
    switch (field_->kind) {
    case FieldKind::Rationals: return q_.get_str();
    case FieldKind::Prime: return std::to_string(r_);
    case FieldKind::Function: {
        if (frac_->den.is_constant() && frac_->den.constant_value().is_one()) {
            if (frac_->num.is_constant()) return frac_->num.constant_value().str();
            return frac_->num.str();
        }
        return "(" + frac_->num.str() + ")/(" + frac_->den.str() + ")";
    }
    }
    return "?";
}

std::size_t Scalar::hash() const {
    std::size_t h = static_cast<std::size_t>(field_->kind) * 1099511628211ULL;
    switch (field_->kind) {
    case FieldKind::Rationals: return h ^ std::hash<std::string>{}(q_.get_str());
    case FieldKind::Prime: return h ^ std::hash<unsigned long>{}(r_);
    case FieldKind::Function:
        return h ^ (frac_->num.hash() * 31 + frac_->den.hash());
    }
    return h;
}

} // namespace subdyn
