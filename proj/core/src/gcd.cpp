#include "subdyn/gcd.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace subdyn {

namespace {

bool is_unit_constant(const Polynomial& p) { return p.is_constant() && !p.is_zero(); }

// Univariate Euclid over the coefficient field (p, q use only variable m).
Polynomial euclid_univariate(Polynomial a, Polynomial b, std::size_t m) {
    while (!b.is_zero()) {
        // a mod b
        while (!a.is_zero() && a.degree_in(m) >= b.degree_in(m)) {
            const Term& la = a.leading();
            const Term& lb = b.leading();
            Exponents shift = exp_div(la.exp, lb.exp);
            Scalar c = -(la.coeff / lb.coeff);
            a = poly_add_scaled(a, b, c, shift);
        }
        std::swap(a, b);
    }
    return a.normalized();
}

// Leading coefficient of p viewed as univariate in m: the sub-polynomial of
// terms with maximal m-exponent, with that exponent cleared.
Polynomial lead_coeff_in(const Polynomial& p, std::size_t m) {
    long d = p.degree_in(m);
    std::vector<Term> out;
    for (const auto& t : p.terms())
        if (static_cast<long>(t.exp[m]) == d) {
            Term nt = t;
            nt.exp[m] = 0;
            out.push_back(std::move(nt));
        }
    return Polynomial::from_terms(p.ring(), std::move(out));
}

Polynomial shift_in(const Polynomial& p, std::size_t m, unsigned e) {
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        Term nt = t;
        nt.exp[m] += e;
        out.push_back(std::move(nt));
    }
    return Polynomial::from_terms(p.ring(), std::move(out));
}

// Pseudo-remainder of f by g with respect to variable m.
Polynomial prem(Polynomial f, const Polynomial& g, std::size_t m) {
    long dg = g.degree_in(m);
    Polynomial lcg = lead_coeff_in(g, m);
    while (!f.is_zero() && f.degree_in(m) >= dg) {
        long df = f.degree_in(m);
        Polynomial lcf = lead_coeff_in(f, m);
        f = f * lcg - g * shift_in(lcf, m, static_cast<unsigned>(df - dg));
    }
    return f;
}

// gcd of the m-coefficients of p (recursive content).
Polynomial content_in(const Polynomial& p, std::size_t m) {
    std::map<unsigned, std::vector<Term>> slices;
    for (const auto& t : p.terms()) {
        Term nt = t;
        unsigned e = nt.exp[m];
        nt.exp[m] = 0;
        slices[e].push_back(std::move(nt));
    }
    Polynomial c(p.ring());
    for (auto& [e, ts] : slices) {
        Polynomial slice = Polynomial::from_terms(p.ring(), std::move(ts));
        c = c.is_zero() ? std::move(slice) : poly_gcd(c, slice);
        if (is_unit_constant(c) && c.constant_value().is_one()) break;
    }
    return c;
}

} // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (!a.ring()->same(*b.ring())) throw MathError("gcd across rings");
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    const RingPtr& r = a.ring();
    if (a.is_constant() || b.is_constant()) return Polynomial::constant(r, 1);

    // main variable: first variable used by either
    std::size_t m = 0;
    for (; m < r->nvars(); ++m)
        if (a.uses_var(m) || b.uses_var(m)) break;

    bool a_multi = false, b_multi = false;
    for (std::size_t v = m + 1; v < r->nvars(); ++v) {
        a_multi |= a.uses_var(v);
        b_multi |= b.uses_var(v);
    }
    if (!a_multi && !b_multi) return euclid_univariate(a, b, m);

    Polynomial ca = content_in(a, m);
    Polynomial cb = content_in(b, m);
    Polynomial f = exact_divide(a, ca);
    Polynomial g = exact_divide(b, cb);
    Polynomial c = poly_gcd(ca, cb);

    if (f.degree_in(m) < g.degree_in(m)) std::swap(f, g);
    while (true) {
        if (g.is_zero()) break;
        if (g.degree_in(m) == 0) {
            // g is m-free while f is m-primitive: primitive gcd is trivial
            f = Polynomial::constant(r, 1);
            break;
        }
        Polynomial rem = prem(f, g, m);
        f = std::move(g);
        if (rem.is_zero()) {
            g = Polynomial(r);
        } else {
            g = exact_divide(rem, content_in(rem, m));
        }
    }
    return (c * f).normalized();
}

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring());
    Polynomial g = poly_gcd(a, b);
    return (a * exact_divide(b, g)).normalized();
}

bool try_exact_divide(const Polynomial& a, const Polynomial& b, Polynomial& quot) {
    if (b.is_zero()) throw MathError("division by zero polynomial");
    const RingPtr& r = a.ring();
    Polynomial q(r);
    Polynomial rem = a;
    const Term& lb = b.leading();
    while (!rem.is_zero()) {
        const Term& lr = rem.leading();
        if (!exp_divides(lb.exp, lr.exp)) return false;
        Scalar c = lr.coeff / lb.coeff;
        Exponents shift = exp_div(lr.exp, lb.exp);
        q = q + Polynomial::monomial(r, shift, c);
        rem = poly_add_scaled(rem, b, -c, shift);
    }
    quot = std::move(q);
    return true;
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
    Polynomial q;
    if (!try_exact_divide(a, b, q))
        throw MathError("polynomial division is not exact");
    return q;
}

namespace {

// gcd(p, dp/dv : all used v); the repeated-factor part in characteristic 0.
Polynomial gcd_with_partials(const Polynomial& p, bool& all_partials_zero) {
    Polynomial g = p;
    all_partials_zero = true;
    for (std::size_t v = 0; v < p.ring()->nvars(); ++v) {
        if (!p.uses_var(v)) continue;
        Polynomial d = p.derivative(v);
        if (d.is_zero()) continue;
        all_partials_zero = false;
        g = poly_gcd(g, d);
    }
    return g;
}

// Exponent-division p(x^char) -> p(x); coefficients are fixed by Frobenius
// in a prime field.
Polynomial char_root(const Polynomial& p, unsigned long ch) {
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        Term nt = t;
        for (auto& e : nt.exp) {
            if (e % ch) throw MathError("inseparable polynomial is not a char-power");
            e = static_cast<unsigned>(e / ch);
        }
        out.push_back(std::move(nt));
    }
    return Polynomial::from_terms(p.ring(), std::move(out));
}

} // namespace

SquarefreeDecomposition squarefree_decomposition(const Polynomial& p) {
    if (p.is_zero()) throw MathError("square-free decomposition of zero");
    SquarefreeDecomposition out;
    out.unit = Scalar::one(p.ring()->field());
    Polynomial prim = p.normalized();
    if (prim.is_constant()) {
        out.unit = p.constant_value();
        return out;
    }

    unsigned long ch = p.ring()->field()->characteristic();
    bool all_zero = false;
    Polynomial g = gcd_with_partials(prim, all_zero);
    if (all_zero) {
        if (ch == 0) throw MathError("zero differential in characteristic 0");
        auto rec = squarefree_decomposition(char_root(prim, ch));
        out.factors = std::move(rec.factors);
        for (auto& f : out.factors) f.second *= static_cast<unsigned>(ch);
    } else if (g.is_constant()) {
        out.factors.push_back({prim, 1});
    } else {
        Polynomial w = exact_divide(prim, g);
        unsigned i = 1;
        while (!w.is_constant()) {
            Polynomial y = poly_gcd(w, g);
            Polynomial a = exact_divide(w, y);
            if (!a.is_constant()) out.factors.push_back({a.normalized(), i});
            w = std::move(y);
            g = exact_divide(g, w);
            ++i;
        }
        if (!g.is_constant()) {
            // remaining char-power part (prime characteristic only)
            if (ch == 0) throw MathError("square-free decomposition failed");
            auto rec = squarefree_decomposition(char_root(g, ch));
            for (auto& f : rec.factors)
                out.factors.push_back({f.first, f.second * static_cast<unsigned>(ch)});
        }
    }

    // unit = p / prod factors^mult
    Polynomial prod = Polynomial::constant(p.ring(), 1);
    for (const auto& [f, m] : out.factors) prod = prod * f.pow(m);
    Polynomial u = exact_divide(p, prod);
    if (!u.is_constant()) throw MathError("square-free decomposition inconsistent");
    out.unit = u.constant_value();
    return out;
}

Polynomial squarefree_part(const Polynomial& p) {
    if (p.is_zero()) return p;
    if (p.is_constant()) return Polynomial::constant(p.ring(), 1);
    auto dec = squarefree_decomposition(p);
    Polynomial r = Polynomial::constant(p.ring(), 1);
    for (const auto& [f, m] : dec.factors) r = r * f;
    return r.normalized();
}

bool rational_kth_root(const Rational& q, unsigned k, Rational& root) {
    if (k == 0) return false;
    if (k == 1) {
        root = q;
        return true;
    }
    if (q == 0) {
        root = 0;
        return true;
    }
    if (q < 0 && k % 2 == 0) return false;
    BigInt num = q.get_num(), den = q.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k)) return false;
    if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k)) return false;
    root = Rational(neg ? -rn : rn, rd);
    root.canonicalize();
    return true;
}

namespace {

bool scalar_kth_root(const Scalar& c, unsigned k, Scalar& out) {
    const FieldPtr& f = c.field();
    switch (f->kind) {
    case FieldKind::Rationals: {
        Rational r;
        if (!rational_kth_root(c.rational_value(), k, r)) return false;
        out = Scalar::of_rational(f, r);
        return true;
    }
    case FieldKind::Prime: {
        // brute scan is fine at word-size desk scale only for tiny p; use the
        // group structure: solutions to x^k = c in F_p*.
        if (c.is_zero()) {
            out = c;
            return true;
        }
        unsigned long p = f->p;
        for (unsigned long x = 1; x < p; ++x) {
            if (fp::pow(x, k, p) == c.residue_value()) {
                out = Scalar::of_rational(f, Rational(static_cast<long>(x)));
                return true;
            }
            if (x > 2000000) break;
        }
        return false;
    }
    case FieldKind::Function: {
        if (!c.is_base_constant()) return false;
        Scalar base_out;
        Scalar base_val = c.frac().num.constant_value() / c.frac().den.constant_value();
        if (!scalar_kth_root(base_val, k, base_out)) return false;
        out = Scalar::of_rational(f, 0);
        out = Scalar::from_fraction(
            f, Polynomial::constant(f->param_ring, base_out),
            Polynomial::constant(f->param_ring, 1));
        return true;
    }
    }
    return false;
}

} // namespace

std::pair<Polynomial, unsigned> perfect_power(const Polynomial& p) {
    if (p.is_zero() || p.is_constant()) return {p, 1};
    auto dec = squarefree_decomposition(p);
    unsigned k = 0;
    for (const auto& [f, m] : dec.factors) k = k ? std::gcd(k, m) : m;
    if (k == 0) k = 1;
    // the constant must also be a k-th power; descend through divisors
    for (unsigned kk = k; kk >= 1; --kk) {
        if (k % kk) continue;
        Scalar root_unit;
        if (!scalar_kth_root(dec.unit, kk, root_unit)) continue;
        bool ok = true;
        for (const auto& [f, m] : dec.factors)
            if (m % kk) {
                ok = false;
                break;
            }
        if (!ok) continue;
        Polynomial root = Polynomial::constant(p.ring(), root_unit);
        for (const auto& [f, m] : dec.factors) root = root * f.pow(m / kk);
        return {root, kk};
    }
    return {p, 1};
}

Polynomial kth_root(const Polynomial& p, unsigned k) {
    if (k == 1) return p;
    auto [root, kk] = perfect_power(p);
    if (kk % k != 0) throw MathError("polynomial is not a k-th power");
    if (kk == k) return root;
    // root of larger power: regroup
    Polynomial r = root;
    for (unsigned extra = kk / k; extra > 1; --extra) r = r * root;
    return r;
}

} // namespace subdyn
