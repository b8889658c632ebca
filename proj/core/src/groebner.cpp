#include "subdyn/groebner.hpp"

#include "subdyn/gcd.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace subdyn {

struct Ideal::Cache {
    std::mutex mu;
    std::shared_ptr<const std::vector<Polynomial>> gb;
};

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> gens)
    : ring_(std::move(ring)), gens_(std::move(gens)), cache_(std::make_shared<Cache>()) {
    for (const auto& g : gens_)
        if (!g.valid() || !g.ring()->same(*ring_))
            throw MathError("ideal generator outside the ideal's ring");
}

const std::vector<Polynomial>& Ideal::groebner(const GroebnerBudget& budget) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->gb)
        cache_->gb = std::make_shared<const std::vector<Polynomial>>(
            reduced_groebner(ring_, gens_, budget));
    return *cache_->gb;
}

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis) {
    if (basis.empty()) return p;
    const RingPtr& ring = p.ring();
    Polynomial rem(ring);
    Polynomial h = p;
    while (!h.is_zero()) {
        const Term& lt = h.leading();
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            const Term& lg = g.leading();
            if (!exp_divides(lg.exp, lt.exp)) continue;
            Scalar c = lt.coeff / lg.coeff;
            h = poly_add_scaled(h, g, -c, exp_div(lt.exp, lg.exp));
            reduced = true;
            break;
        }
        if (!reduced) {
            rem = rem + Polynomial::monomial(ring, lt.exp, lt.coeff);
            h = h - Polynomial::monomial(ring, lt.exp, lt.coeff);
        }
    }
    return rem;
}

namespace {

struct Pair {
    std::size_t i, j;
    Exponents lcm;
};

Polynomial s_poly(const Polynomial& f, const Polynomial& g, const Exponents& lcm) {
    const Term& lf = f.leading();
    const Term& lg = g.leading();
    Polynomial a = poly_add_scaled(Polynomial(f.ring()), f, lg.coeff, exp_div(lcm, lf.exp));
    return poly_add_scaled(a, g, -lf.coeff, exp_div(lcm, lg.exp));
}

} // namespace

std::vector<Polynomial> reduced_groebner(const RingPtr& ring, std::vector<Polynomial> gens,
                                         const GroebnerBudget& budget) {
    std::vector<Polynomial> basis;
    for (auto& g : gens) {
        if (!g.is_zero()) basis.push_back(g.normalized());
    }
    std::sort(basis.begin(), basis.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ring->cmp(a.leading().exp, b.leading().exp) < 0;
    });
    basis.erase(std::unique(basis.begin(), basis.end(),
                            [](const Polynomial& a, const Polynomial& b) { return a == b; }),
                basis.end());

    auto add_pairs = [&](std::vector<Pair>& pairs, std::size_t j) {
        for (std::size_t i = 0; i < j; ++i)
            pairs.push_back({i, j, exp_lcm(basis[i].leading().exp, basis[j].leading().exp)});
    };

    std::vector<Pair> pairs;
    for (std::size_t j = 1; j < basis.size(); ++j) add_pairs(pairs, j);

    std::set<std::pair<std::size_t, std::size_t>> pending;
    for (const auto& p : pairs) pending.insert({p.i, p.j});

    unsigned long processed = 0;
    while (!pairs.empty()) {
        // normal strategy: smallest lcm in the ring order; ties by index
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            int c = ring->cmp(pairs[k].lcm, pairs[best].lcm);
            if (c < 0 || (c == 0 && std::make_pair(pairs[k].i, pairs[k].j) <
                                        std::make_pair(pairs[best].i, pairs[best].j)))
                best = k;
        }
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + static_cast<long>(best));
        pending.erase({pr.i, pr.j});

        if (++processed > budget.max_pairs)
            throw ResourceError("Groebner pair budget exceeded (" +
                                std::to_string(budget.max_pairs) + ")");

        const Exponents& ei = basis[pr.i].leading().exp;
        const Exponents& ej = basis[pr.j].leading().exp;
        // product criterion
        if (pr.lcm == exp_mul(ei, ej)) continue;
        // chain criterion
        bool skip = false;
        for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!exp_divides(basis[k].leading().exp, pr.lcm)) continue;
            auto key1 = std::minmax(pr.i, k);
            auto key2 = std::minmax(pr.j, k);
            if (!pending.count({key1.first, key1.second}) &&
                !pending.count({key2.first, key2.second}))
                skip = true;
        }
        if (skip) continue;

        Polynomial s = s_poly(basis[pr.i], basis[pr.j], pr.lcm);
        Polynomial r = normal_form(s, basis);
        if (r.is_zero()) continue;
        basis.push_back(r.normalized());
        std::size_t j = basis.size() - 1;
        for (std::size_t i = 0; i < j; ++i) {
            pairs.push_back({i, j, exp_lcm(basis[i].leading().exp, basis[j].leading().exp)});
            pending.insert({i, j});
        }
    }

    // minimalize: drop elements whose lead is divisible by another lead
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            if (exp_divides(basis[j].leading().exp, basis[i].leading().exp)) {
                int c = ring->cmp(basis[j].leading().exp, basis[i].leading().exp);
                // equal leads: keep the earlier one
                redundant = c != 0 || j < i;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }

    // inter-reduce tails to a unique reduced basis
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Polynomial> others;
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Polynomial r = normal_form(minimal[i], others).normalized();
            if (!(r == minimal[i])) {
                if (r.is_zero()) {
                    minimal.erase(minimal.begin() + static_cast<long>(i));
                    changed = true;
                    break;
                }
                minimal[i] = r;
                changed = true;
            }
        }
    }

    std::sort(minimal.begin(), minimal.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ring->cmp(a.leading().exp, b.leading().exp) < 0;
    });
    return minimal;
}

Ideal eliminate(const Ideal& I, const std::vector<std::string>& drop_vars,
                const GroebnerBudget& budget) {
    const RingPtr& ring = I.ring();
    for (const auto& v : drop_vars)
        if (ring->index_of(v) < 0)
            throw MathError("eliminate: unknown variable '" + v + "'");
    if (drop_vars.empty()) return I;

    std::set<std::string> dropped(drop_vars.begin(), drop_vars.end());
    std::vector<std::string> order_vars;
    std::vector<unsigned> order_weights;
    std::vector<std::string> kept;
    std::vector<unsigned> kept_weights;
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
        if (dropped.count(ring->vars()[i])) {
            order_vars.push_back(ring->vars()[i]);
            order_weights.push_back(ring->weights()[i]);
        } else {
            kept.push_back(ring->vars()[i]);
            kept_weights.push_back(ring->weights()[i]);
        }
    }
    if (kept.empty()) throw MathError("eliminate: no variables left");
    order_vars.insert(order_vars.end(), kept.begin(), kept.end());
    order_weights.insert(order_weights.end(), kept_weights.begin(), kept_weights.end());

    RingPtr elim_ring =
        PolyRing::make(ring->field(), order_vars, MonomialOrder::Lex, order_weights);
    std::vector<long> to_elim(ring->nvars());
    for (std::size_t i = 0; i < ring->nvars(); ++i)
        to_elim[i] = elim_ring->index_of(ring->vars()[i]);

    std::vector<Polynomial> mapped;
    for (const auto& g : I.gens()) mapped.push_back(g.map_ring(elim_ring, to_elim));
    std::vector<Polynomial> gb = reduced_groebner(elim_ring, std::move(mapped), budget);

    RingPtr out_ring = PolyRing::make(ring->field(), kept, ring->order(), kept_weights);
    std::vector<long> to_out(elim_ring->nvars(), -1);
    for (std::size_t i = 0; i < elim_ring->nvars(); ++i) {
        long idx = out_ring->index_of(elim_ring->vars()[i]);
        to_out[i] = idx;
    }
    std::vector<Polynomial> kept_polys;
    for (const auto& g : gb) {
        bool pure = true;
        for (std::size_t i = 0; i < elim_ring->nvars() && pure; ++i)
            if (to_out[i] < 0 && g.uses_var(i)) pure = false;
        if (pure) kept_polys.push_back(g.map_ring(out_ring, to_out));
    }
    return Ideal(out_ring, std::move(kept_polys));
}

bool ideal_membership(const Polynomial& p, const Ideal& I, const GroebnerBudget& budget) {
    if (!p.ring()->same(*I.ring())) throw MathError("membership test across rings");
    return normal_form(p, I.groebner(budget)).is_zero();
}

namespace {

using ZPoly = std::vector<BigInt>; // dense in t

ZPoly zp_one() { return {BigInt(1)}; }

ZPoly zp_sub_shifted(const ZPoly& a, const ZPoly& b, std::size_t shift) {
    ZPoly r = a;
    if (r.size() < b.size() + shift) r.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= b[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

unsigned exp_total(const Exponents& e) {
    unsigned t = 0;
    for (unsigned x : e) t += x;
    return t;
}

std::vector<Exponents> minimalize_monomials(std::vector<Exponents> gens) {
    std::sort(gens.begin(), gens.end(),
              [](const Exponents& a, const Exponents& b) { return exp_total(a) < exp_total(b); });
    std::vector<Exponents> out;
    for (const auto& g : gens) {
        bool redundant = false;
        for (const auto& h : out)
            if (exp_divides(h, g)) {
                redundant = true;
                break;
            }
        if (!redundant) out.push_back(g);
    }
    return out;
}

// Hilbert series numerator N(t) of R/(monomial ideal), HS = N(t)/(1-t)^nvars.
ZPoly hilbert_numerator(std::vector<Exponents> gens) {
    gens = minimalize_monomials(std::move(gens));
    if (gens.empty()) return zp_one();
    Exponents m = gens.back();
    gens.pop_back();
    ZPoly without = hilbert_numerator(gens);
    std::vector<Exponents> colon;
    colon.reserve(gens.size());
    for (const auto& g : gens) colon.push_back(exp_div(g, exp_gcd(g, m)));
    ZPoly quot = hilbert_numerator(std::move(colon));
    return zp_sub_shifted(without, quot, exp_total(m));
}

} // namespace

DimensionDegree dimension_degree_of_basis(const RingPtr& ring,
                                          const std::vector<Polynomial>& basis) {
    if (!ring->has_unit_weights())
        throw MathError("dimension_degree requires the standard (unit-weight) grading");
    std::vector<Exponents> lts;
    for (const auto& g : basis) {
        if (g.is_zero()) continue;
        if (!g.weighted_homogeneous().first)
            throw MathError("dimension_degree requires homogeneous generators");
        if (g.is_constant()) throw MathError("dimension_degree of the unit ideal");
        lts.push_back(g.leading().exp);
    }
    ZPoly n = hilbert_numerator(std::move(lts));
    // strip (1-t) factors
    long strips = 0;
    auto value_at_one = [](const ZPoly& p) {
        BigInt s = 0;
        for (const auto& c : p) s += c;
        return s;
    };
    while (!n.empty() && value_at_one(n) == 0) {
        // divide by (1-t): q_i = n_i + q_{i-1}
        ZPoly q(n.size() ? n.size() - 1 : 0);
        BigInt carry = 0;
        for (std::size_t i = 0; i + 1 < n.size(); ++i) {
            carry = n[i] + carry;
            q[i] = carry;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        n = std::move(q);
        ++strips;
    }
    DimensionDegree dd;
    long krull = static_cast<long>(ring->nvars()) - strips;
    dd.dimension = krull - 1;
    dd.degree = value_at_one(n);
    if (dd.degree <= 0) throw MathError("dimension_degree: inconsistent Hilbert data");
    return dd;
}

DimensionDegree dimension_degree(const Ideal& I, const GroebnerBudget& budget) {
    const RingPtr& ring = I.ring();
    bool all_zero = true;
    for (const auto& g : I.gens())
        if (!g.is_zero()) all_zero = false;
    if (all_zero) return {static_cast<long>(ring->nvars()) - 1, 1};

    if (ring->order() == MonomialOrder::GrevLex) return dimension_degree_of_basis(ring, I.groebner(budget));
    RingPtr grv = PolyRing::make(ring->field(), ring->vars(), MonomialOrder::GrevLex,
                                 ring->weights());
    std::vector<long> id_map(ring->nvars());
    for (std::size_t i = 0; i < ring->nvars(); ++i) id_map[i] = static_cast<long>(i);
    std::vector<Polynomial> gens;
    for (const auto& g : I.gens()) gens.push_back(g.map_ring(grv, id_map));
    return dimension_degree_of_basis(grv, reduced_groebner(grv, std::move(gens), budget));
}

} // namespace subdyn
