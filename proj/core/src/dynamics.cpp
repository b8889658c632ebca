#include "subdyn/dynamics.hpp"

#include "subdyn/gcd.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace subdyn {

std::vector<std::string> fresh_names(const std::string& base, std::size_t count,
                                     const std::vector<std::string>& taken) {
    std::set<std::string> used(taken.begin(), taken.end());
    std::vector<std::string> out;
    std::string prefix = base;
    while (true) {
        bool clash = false;
        for (std::size_t i = 0; i < count; ++i)
            if (used.count(prefix + std::to_string(i))) {
                clash = true;
                break;
            }
        if (!clash) break;
        prefix += "_";
    }
    for (std::size_t i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

struct Morphism::QCache {
    std::mutex mu;
    std::shared_ptr<const std::vector<Polynomial>> primitive;
    std::shared_ptr<const BigInt> resultant;
};

Morphism Morphism::make(RingPtr ring, std::vector<Polynomial> coords) {
    Morphism f;
    if (coords.size() != ring->nvars())
        throw MathError("morphism needs exactly N+1 coordinate forms");
    if (!ring->has_unit_weights())
        throw MathError("morphism coordinates live in a unit-weight ring");
    std::optional<unsigned long> d;
    for (const auto& c : coords) {
        if (!c.valid() || !c.ring()->same(*ring))
            throw MathError("morphism coordinate outside the ambient ring");
        if (c.is_zero()) throw MathError("morphism coordinate is identically zero");
        auto [homog, deg] = c.weighted_homogeneous();
        if (!homog) throw MathError("morphism coordinate is not homogeneous");
        if (d && *d != *deg) throw MathError("morphism coordinates have different degrees");
        d = *deg;
    }
    if (*d < 1) throw MathError("morphism degree must be >= 1");
    Scalar res = macaulay_resultant(coords);
    if (res.is_zero())
        throw MathError("coordinates share a projective zero: not a morphism");
    f.ring_ = std::move(ring);
    f.coords_ = std::move(coords);
    f.degree_ = static_cast<unsigned>(*d);
    f.qcache_ = std::make_shared<QCache>();
    return f;
}

const std::vector<Polynomial>& Morphism::primitive_integer_coords() const {
    if (ring_->field()->kind != FieldKind::Rationals)
        throw MathError("integer normalization requires rational coefficients");
    std::lock_guard<std::mutex> lock(qcache_->mu);
    if (!qcache_->primitive) {
        BigInt num_gcd = 0, den_lcm = 1;
        for (const auto& c : coords_)
            for (const auto& t : c.terms()) {
                Rational q = t.coeff.rational_value();
                mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
            }
        Rational content(num_gcd, den_lcm);
        content.canonicalize();
        if (coords_[0].leading().coeff.rational_value() < 0) content = -content;
        Scalar inv = Scalar::of_rational(ring_->field(), Rational(1) / content);
        auto prim = std::make_shared<std::vector<Polynomial>>();
        for (const auto& c : coords_) prim->push_back(c * inv);
        qcache_->primitive = std::move(prim);
    }
    return *qcache_->primitive;
}

const BigInt& Morphism::integer_resultant() const {
    const auto& prim = primitive_integer_coords();
    std::lock_guard<std::mutex> lock(qcache_->mu);
    if (!qcache_->resultant) {
        Scalar res = macaulay_resultant(prim);
        Rational q = res.rational_value();
        if (q.get_den() != 1)
            throw MathError("integer resultant of integer forms came out fractional");
        qcache_->resultant = std::make_shared<const BigInt>(q.get_num());
    }
    return *qcache_->resultant;
}

Real Morphism::height() const {
    const auto& prim = primitive_integer_coords();
    BigInt max_abs = 0;
    for (const auto& c : prim)
        for (const auto& t : c.terms()) {
            BigInt a = abs(BigInt(t.coeff.rational_value().get_num()));
            if (a > max_abs) max_abs = a;
        }
    if (max_abs == 0) throw MathError("height of the zero map");
    return ln_big(max_abs);
}

Morphism Morphism::iterate(unsigned n) const {
    if (n == 0) throw MathError("iterate count must be >= 1");
    Morphism g = *this;
    for (unsigned i = 1; i < n; ++i) {
        // a composition of morphisms is a morphism; skip the resultant check
        std::vector<Polynomial> comp;
        comp.reserve(coords_.size());
        for (const auto& c : coords_) comp.push_back(c.substitute(g.coords_));
        Morphism next;
        next.ring_ = ring_;
        next.coords_ = std::move(comp);
        next.degree_ = g.degree_ * degree_;
        next.qcache_ = std::make_shared<QCache>();
        g = std::move(next);
    }
    return g;
}

struct Subvariety::Cache {
    std::mutex mu;
    std::shared_ptr<const std::vector<Polynomial>> canonical;
    std::shared_ptr<const DimensionDegree> dd;
};

Subvariety Subvariety::make(RingPtr ring, std::vector<Polynomial> gens) {
    Subvariety x;
    if (!ring->has_unit_weights())
        throw MathError("subvariety generators live in a unit-weight ring");
    bool any = false;
    for (const auto& g : gens) {
        if (!g.valid() || !g.ring()->same(*ring))
            throw MathError("subvariety generator outside the ambient ring");
        if (g.is_zero()) continue;
        any = true;
        if (!g.weighted_homogeneous().first)
            throw MathError("subvariety generator is not homogeneous");
        if (g.is_constant()) throw MathError("subvariety ideal is not proper");
    }
    if (!any) throw MathError("subvariety needs at least one nonzero generator");
    x.ring_ = std::move(ring);
    x.gens_ = std::move(gens);
    x.cache_ = std::make_shared<Cache>();
    return x;
}

const std::vector<Polynomial>& Subvariety::canonical_basis() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->canonical) {
        RingPtr grv = ring_->order() == MonomialOrder::GrevLex
                          ? ring_
                          : PolyRing::make(ring_->field(), ring_->vars(), MonomialOrder::GrevLex,
                                           ring_->weights());
        std::vector<Polynomial> gens;
        if (grv == ring_) {
            gens = gens_;
        } else {
            std::vector<long> idmap(ring_->nvars());
            for (std::size_t i = 0; i < ring_->nvars(); ++i) idmap[i] = static_cast<long>(i);
            for (const auto& g : gens_) gens.push_back(g.map_ring(grv, idmap));
        }
        auto basis = reduced_groebner(grv, std::move(gens));
        if (basis.size() == 1 && basis[0].is_constant())
            throw MathError("subvariety ideal is not proper");
        cache_->canonical = std::make_shared<const std::vector<Polynomial>>(std::move(basis));
    }
    return *cache_->canonical;
}

std::string Subvariety::canonical_key() const {
    const auto& basis = canonical_basis();
    std::string key;
    for (const auto& g : basis) {
        if (!key.empty()) key += "; ";
        key += g.str();
    }
    return key;
}

long Subvariety::dimension() const {
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        if (cache_->dd) return cache_->dd->dimension;
    }
    const auto& basis = canonical_basis();
    RingPtr grv = basis.empty() ? ring_ : basis[0].ring();
    DimensionDegree dd = dimension_degree_of_basis(grv, basis);
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->dd) cache_->dd = std::make_shared<const DimensionDegree>(dd);
    return cache_->dd->dimension;
}

long Subvariety::codimension() const { return ambient_N() - dimension(); }

BigInt Subvariety::degree() const {
    dimension();
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->dd->degree;
}

bool Subvariety::same_variety(const Subvariety& other) const {
    if (!ring_->same(*other.ring_)) return false;
    return canonical_basis() == other.canonical_basis();
}

Subvariety forward_image(const Morphism& f, const Subvariety& X, const GroebnerBudget& budget) {
    const RingPtr& ring = f.ring();
    if (!ring->same(*X.ring())) throw MathError("forward image: ambient spaces differ");
    const std::size_t n = ring->nvars();

    std::vector<std::string> img = fresh_names("img", n, ring->vars());
    std::vector<std::string> ext_vars = ring->vars();
    ext_vars.insert(ext_vars.end(), img.begin(), img.end());
    std::vector<unsigned> ext_weights(n, 1);
    ext_weights.insert(ext_weights.end(), n, f.degree());
    RingPtr ext = PolyRing::make(ring->field(), ext_vars, MonomialOrder::Lex, ext_weights);

    std::vector<long> lift(n);
    for (std::size_t i = 0; i < n; ++i) lift[i] = static_cast<long>(i);

    std::vector<Polynomial> gens;
    for (const auto& g : X.gens())
        if (!g.is_zero()) gens.push_back(g.map_ring(ext, lift));
    for (std::size_t i = 0; i < n; ++i)
        gens.push_back(Polynomial::variable(ext, n + i) - f.coords()[i].map_ring(ext, lift));

    Ideal graph(ext, std::move(gens));
    Ideal elim = eliminate(graph, ring->vars(), budget);

    // Back to the ambient names with the standard grading.
    RingPtr out_ring = PolyRing::make(ring->field(), ring->vars(), ring->order());
    std::vector<long> back(elim.ring()->nvars(), -1);
    for (std::size_t i = 0; i < elim.ring()->nvars(); ++i) {
        // elim ring variables are img0..imgN in ambient order
        for (std::size_t j = 0; j < n; ++j)
            if (elim.ring()->vars()[i] == img[j]) back[i] = static_cast<long>(j);
    }
    std::vector<Polynomial> out;
    for (const auto& g : elim.gens()) out.push_back(g.map_ring(out_ring, back));
    if (out.empty()) throw MathError("forward image computed an empty ideal");

    if (out.size() == 1) out[0] = squarefree_part(out[0]);
    Subvariety Y = Subvariety::make(out_ring, std::move(out));
    if (Y.codimension() != X.codimension())
        throw MathError("forward image changed codimension; morphism hypothesis violated");
    return Y;
}

Polynomial compose(const Polynomial& g, const Morphism& f) {
    if (!g.valid() || g.ring()->nvars() != f.ring()->nvars())
        throw MathError("compose: variable count mismatch");
    return g.substitute(f.coords());
}

Subvariety preimage(const Morphism& f, const Subvariety& X) {
    if (!f.ring()->same(*X.ring())) throw MathError("preimage: ambient spaces differ");
    std::vector<Polynomial> gens;
    for (const auto& g : X.gens())
        if (!g.is_zero()) gens.push_back(g.substitute(f.coords()));
    return Subvariety::make(f.ring(), std::move(gens));
}

Subvariety reduced_preimage(const Morphism& f, const Subvariety& X) {
    Subvariety raw = preimage(f, X);
    std::vector<Polynomial> gens = raw.gens();
    if (gens.size() == 1) gens[0] = squarefree_part(gens[0]);
    return Subvariety::make(raw.ring(), std::move(gens));
}

bool good_reduction(const Morphism& f, unsigned long p) {
    if (!is_prime(BigInt(p))) throw MathError("good reduction test: p is not prime");
    return f.integer_resultant() % BigInt(p) != 0;
}

Morphism reduce_mod_p(const Morphism& f, unsigned long p) {
    if (!is_prime(BigInt(p))) throw MathError("reduction: p is not prime");
    const auto& prim = f.primitive_integer_coords();
    FieldPtr fp_field = FieldDesc::prime(p);
    std::vector<Polynomial> coords;
    for (const auto& c : prim)
        coords.push_back(c.map_coeffs(fp_field, [&](const Scalar& s) {
            return Scalar::of_rational(fp_field, s.rational_value());
        }));
    RingPtr ring = coords.empty() ? nullptr : coords[0].ring();
    for (const auto& c : coords)
        if (c.is_zero())
            throw MathError("morphism coordinate vanishes mod p: bad reduction presentation");
    return Morphism::make(ring, std::move(coords));
}

Subvariety reduce_mod_p(const Subvariety& X, unsigned long p) {
    if (!is_prime(BigInt(p))) throw MathError("reduction: p is not prime");
    if (X.ring()->field()->kind != FieldKind::Rationals)
        throw MathError("reduction requires rational coefficients");
    FieldPtr fp_field = FieldDesc::prime(p);
    std::vector<Polynomial> gens;
    for (const auto& g : X.gens()) {
        if (g.is_zero()) continue;
        Polynomial prim = rational_primitive(g).first;
        Polynomial red = prim.map_coeffs(fp_field, [&](const Scalar& s) {
            return Scalar::of_rational(fp_field, s.rational_value());
        });
        if (red.is_zero())
            throw MathError("generator '" + g.str() + "' vanishes identically mod " +
                            std::to_string(p));
        gens.push_back(std::move(red));
    }
    return Subvariety::make(gens.empty() ? nullptr : gens[0].ring(), std::move(gens));
}

std::string OrbitReport::serialize() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        os << "step=" << i << " degree=" << steps[i].degree.get_str() << " basis=";
        for (std::size_t j = 0; j < steps[i].basis.size(); ++j) {
            if (j) os << "; ";
            os << steps[i].basis[j];
        }
        os << "\n";
    }
    os << "tail=" << tail << " period=";
    if (period)
        os << *period;
    else
        os << "none";
    os << "\n";
    return os.str();
}

OrbitReport iterate_orbit(const Morphism& f, const Subvariety& X, unsigned max_steps,
                          const BigInt& degree_cap, const GroebnerBudget& budget) {
    if (max_steps < 1) throw MathError("orbit iteration needs max_steps >= 1");
    OrbitReport report;
    std::map<std::string, unsigned> seen;
    Subvariety cur = X;
    BigInt dpow = big_pow(BigInt(f.degree()), static_cast<unsigned long>(
                                                  std::max<long>(0, f.ambient_N() - X.codimension())));
    for (unsigned i = 0; i <= max_steps; ++i) {
        std::string key = cur.canonical_key();
        auto it = seen.find(key);
        if (it != seen.end()) {
            report.tail = it->second;
            report.period = i - it->second;
            return report;
        }
        seen[key] = i;
        OrbitStep step;
        step.key_hash = std::hash<std::string>{}(key);
        step.degree = cur.degree();
        for (const auto& g : cur.canonical_basis()) step.basis.push_back(g.str());
        report.steps.push_back(std::move(step));
        if (i == max_steps) break;
        if (degree_cap > 0 && cur.degree() * dpow > degree_cap) {
            report.degree_capped = true;
            break;
        }
        cur = forward_image(f, cur, budget);
    }
    return report;
}

namespace {

// Splits a polynomial over Function(params+images) into a polynomial in the
// image variables over Function(params) (or the plain base field).
Polynomial split_image_poly(const Scalar& value, const FieldPtr& orig_field,
                            const RingPtr& out_ring, std::size_t n_params) {
    const FracData& fr = value.frac();
    if (!(fr.den.is_constant() && fr.den.constant_value().is_one()))
        throw MathError("resultant value has a nontrivial denominator");
    const RingPtr& joint = fr.num.ring(); // params first, then image coords
    std::vector<Term> out_terms;
    for (const auto& t : fr.num.terms()) {
        Exponents img_exp(out_ring->nvars(), 0);
        for (std::size_t i = 0; i < out_ring->nvars(); ++i) img_exp[i] = t.exp[n_params + i];
        Scalar coeff;
        if (orig_field->kind == FieldKind::Function) {
            Exponents par_exp(n_params, 0);
            for (std::size_t i = 0; i < n_params; ++i) par_exp[i] = t.exp[i];
            Polynomial num = Polynomial::monomial(orig_field->param_ring, par_exp, t.coeff);
            coeff = Scalar::from_fraction(orig_field, std::move(num),
                                          Polynomial::constant(orig_field->param_ring, 1));
        } else {
            coeff = t.coeff;
        }
        out_terms.push_back({std::move(img_exp), std::move(coeff)});
    }
    return Polynomial::from_terms(out_ring, std::move(out_terms));
}

} // namespace

ImageViaResultant image_via_resultant(const Morphism& f, const Polynomial& g,
                                      const MacaulayOptions& opts,
                                      const GroebnerBudget& budget) {
    const RingPtr& ring = f.ring();
    if (!g.valid() || !g.ring()->same(*ring))
        throw MathError("image form lives outside the morphism's ring");
    if (g.is_zero() || !g.weighted_homogeneous().first)
        throw MathError("image computation requires a nonzero homogeneous form");
    const std::size_t n = ring->nvars();
    if (n < 2) throw MathError("image computation requires ambient dimension >= 1");
    const FieldPtr& field = ring->field();

    // Extend the coefficient field by the image coordinates.
    std::vector<std::string> taken = ring->vars();
    FieldPtr base = field;
    std::vector<std::string> params;
    if (field->kind == FieldKind::Function) {
        base = field->base;
        params = field->parameters;
        taken.insert(taken.end(), params.begin(), params.end());
    }
    std::vector<std::string> ynames = fresh_names("yc", n, taken);
    std::size_t n_params = params.size();
    std::vector<std::string> all_params = params;
    all_params.insert(all_params.end(), ynames.begin(), ynames.end());
    FieldPtr ext_field = FieldDesc::function(all_params, base);
    RingPtr ext_ring = PolyRing::make(ext_field, ring->vars(), ring->order());

    auto lift_scalar = [&](const Scalar& s) -> Scalar {
        if (field->kind != FieldKind::Function)
            return Scalar::from_fraction(
                ext_field, Polynomial::constant(ext_field->param_ring, s),
                Polynomial::constant(ext_field->param_ring, 1));
        std::vector<long> pmap(n_params);
        for (std::size_t i = 0; i < n_params; ++i) pmap[i] = static_cast<long>(i);
        const FracData& fr = s.frac();
        return Scalar::from_fraction(ext_field, fr.num.map_ring(ext_field->param_ring, pmap),
                                     fr.den.map_ring(ext_field->param_ring, pmap));
    };
    auto lift_poly = [&](const Polynomial& p) {
        return p.map_coeffs(ext_field, lift_scalar).map_ring(
            ext_ring, [&] {
                std::vector<long> m(n);
                for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<long>(i);
                return m;
            }());
    };

    std::vector<Polynomial> system;
    system.push_back(lift_poly(g));
    Polynomial f0 = lift_poly(f.coords()[0]);
    for (std::size_t j = 1; j < n; ++j) {
        Scalar yj = Scalar::parameter(ext_field, n_params + j);
        Scalar y0 = Scalar::parameter(ext_field, n_params + 0);
        system.push_back(f0 * yj - lift_poly(f.coords()[j]) * y0);
    }

    RingPtr out_ring = PolyRing::make(field, ring->vars(), ring->order());
    ImageViaResultant out;

    bool degenerate = false;
    Scalar raw = Scalar::zero(ext_field);
    try {
        raw = macaulay_resultant(system, opts);
        if (raw.is_zero()) degenerate = true;
    } catch (const DegenerateError&) {
        degenerate = true;
    }

    if (degenerate) {
        Subvariety X = Subvariety::make(ring, {g});
        Subvariety Y = forward_image(f, X, budget);
        if (Y.canonical_basis().size() != 1)
            throw MathError("image is not a hypersurface");
        std::vector<long> idmap(n);
        for (std::size_t i = 0; i < n; ++i) idmap[i] = static_cast<long>(i);
        out.image_form = Y.canonical_basis()[0].map_ring(out_ring, idmap);
        out.raw = out.image_form;
        out.power = 1;
        out.used_groebner_fallback = true;
        return out;
    }

    out.raw = split_image_poly(raw, field, out_ring, n_params).normalized();
    out.power = perfect_power(out.raw).second;

    Polynomial s = squarefree_part(out.raw);
    // The pivot construction sweeps the extraneous hyperplane {y_0 = 0}
    // whenever V(g) meets V(f_0); strip it unless a component of V(g) really
    // maps onto it.
    if (s.degree_in(0) > 0) {
        Polynomial x0 = Polynomial::variable(out_ring, 0);
        Polynomial quot;
        if (try_exact_divide(s, x0, quot) && !quot.is_constant()) {
            Polynomial h = poly_gcd(squarefree_part(g), f.coords()[0]);
            if (h.is_constant()) s = quot;
        }
    }
    out.image_form = s.normalized();
    return out;
}

} // namespace subdyn
