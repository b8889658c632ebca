#include "subdyn/chow.hpp"

#include "subdyn/gcd.hpp"
#include "subdyn/matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace subdyn {

namespace {

RingPtr dual_ring(const RingPtr& ring) {
    std::vector<std::string> u;
    for (std::size_t i = 0; i < ring->nvars(); ++i) u.push_back("u" + std::to_string(i));
    return PolyRing::make(ring->field(), u, MonomialOrder::GrevLex);
}

// Rational point of a zero-dimensional degree-1 variety, from its linear
// canonical basis; empty when the basis is not linear-triangular.
std::vector<Scalar> point_from_basis(const Subvariety& X) {
    const auto& basis = X.canonical_basis();
    const RingPtr& ring = basis.empty() ? X.ring() : basis[0].ring();
    const std::size_t n = ring->nvars();
    if (basis.size() != n - 1) return {};
    for (const auto& g : basis)
        if (g.total_degree() != 1) return {};
    // nullspace of the (n-1) x n coefficient matrix
    const FieldPtr& field = ring->field();
    std::vector<std::vector<Scalar>> m(n - 1, std::vector<Scalar>(n, Scalar::zero(field)));
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (const auto& t : basis[r].terms())
            for (std::size_t i = 0; i < n; ++i)
                if (t.exp[i]) m[r][i] = t.coeff;
    // Gaussian elimination to reduced row echelon form
    std::vector<long> pivot_col(n - 1, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n - 1; ++col) {
        std::size_t piv = row;
        while (piv < n - 1 && m[piv][col].is_zero()) ++piv;
        if (piv == n - 1) continue;
        std::swap(m[piv], m[row]);
        Scalar inv = m[row][col].inverse();
        for (std::size_t c = 0; c < n; ++c) m[row][c] = m[row][c] * inv;
        for (std::size_t r = 0; r < n - 1; ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            Scalar f = m[r][col];
            for (std::size_t c = 0; c < n; ++c) m[r][c] = m[r][c] - f * m[row][c];
        }
        pivot_col[row] = static_cast<long>(col);
        ++row;
    }
    if (row != n - 1) return {};
    long free_col = -1;
    for (std::size_t c = 0; c < n; ++c) {
        bool is_pivot = false;
        for (long pc : pivot_col) is_pivot |= pc == static_cast<long>(c);
        if (!is_pivot) {
            free_col = static_cast<long>(c);
            break;
        }
    }
    std::vector<Scalar> pt(n, Scalar::zero(field));
    pt[static_cast<std::size_t>(free_col)] = Scalar::one(field);
    for (std::size_t r = 0; r < n - 1; ++r)
        pt[static_cast<std::size_t>(pivot_col[r])] =
            -m[r][static_cast<std::size_t>(free_col)];
    return pt;
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

Polynomial small_det(const std::vector<std::vector<Polynomial>>& m, const RingPtr& ring) {
    return det_bareiss(m, ring);
}

} // namespace

ChowForm chow_form(const Subvariety& X, const GroebnerBudget& budget) {
    ChowForm out;
    out.ambient_N = X.ambient_N();
    out.dim_k = X.dimension();
    out.degree_D = X.degree();
    const RingPtr& ring = X.ring();
    const std::size_t n = ring->nvars();

    if (out.dim_k == out.ambient_N - 1) {
        const auto& basis = X.canonical_basis();
        if (basis.size() != 1)
            throw MathError("hypersurface with a non-principal canonical basis");
        RingPtr du = dual_ring(ring);
        std::vector<long> idmap(n);
        for (std::size_t i = 0; i < n; ++i) idmap[i] = static_cast<long>(i);
        out.kind = ChowForm::Kind::Hypersurface;
        out.form = basis[0].map_ring(du, idmap).normalized();
        return out;
    }

    if (out.dim_k == 0 && out.degree_D == 1) {
        std::vector<Scalar> pt = point_from_basis(X);
        if (!pt.empty()) {
            RingPtr du = dual_ring(ring);
            Polynomial form(du);
            for (std::size_t i = 0; i < n; ++i)
                form = form + Polynomial::variable(du, i) * pt[i];
            out.kind = ChowForm::Kind::Point;
            out.form = form.normalized();
            return out;
        }
    }

    // General path: chart elimination against k+1 symbolic hyperplanes,
    // rewritten in Plücker coordinates.
    if (out.dim_k < 0) throw MathError("chow form of an empty variety");
    const std::size_t k = static_cast<std::size_t>(out.dim_k);
    const FieldPtr& field = ring->field();

    long chart = -1;
    {
        Ideal XI(ring, X.gens());
        for (std::size_t c = 0; c < n && chart < 0; ++c)
            if (!ideal_membership(Polynomial::variable(ring, c), XI, budget))
                chart = static_cast<long>(c);
    }
    if (chart < 0) throw MathError("chow form: variety avoids every chart");

    // variables: affine mains (all but chart), then the u-matrix entries
    std::vector<std::string> vars;
    std::vector<std::string> affine_names;
    for (std::size_t i = 0; i < n; ++i)
        if (static_cast<long>(i) != chart) vars.push_back(ring->vars()[i]);
    affine_names = vars;
    std::vector<std::string> unames;
    for (std::size_t j = 0; j <= k; ++j)
        for (std::size_t i = 0; i < n; ++i)
            unames.push_back("u" + std::to_string(j) + "_" + std::to_string(i));
    vars.insert(vars.end(), unames.begin(), unames.end());
    RingPtr work = PolyRing::make(field, vars, MonomialOrder::Lex);

    auto u_index = [&](std::size_t j, std::size_t i) {
        return affine_names.size() + j * n + i;
    };

    // dehomogenize generators at chart = 1
    std::vector<Polynomial> images;
    {
        std::size_t pos = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (static_cast<long>(i) == chart) {
                images.push_back(Polynomial::constant(work, 1));
            } else {
                images.push_back(Polynomial::variable(work, pos));
                ++pos;
            }
        }
    }
    std::vector<Polynomial> gens;
    for (const auto& g : X.gens())
        if (!g.is_zero()) gens.push_back(g.substitute(images));
    for (std::size_t j = 0; j <= k; ++j) {
        Polynomial h(work);
        for (std::size_t i = 0; i < n; ++i)
            h = h + Polynomial::variable(work, u_index(j, i)) * images[i];
        gens.push_back(h);
    }

    Ideal incidence(work, std::move(gens));
    Ideal elim = eliminate(incidence, affine_names, budget);
    if (elim.gens().empty()) throw MathError("chow form: elimination came out empty");
    std::vector<Polynomial> basis = elim.groebner(budget);
    Polynomial ch_u = basis[0];
    if (basis.size() > 1) {
        // non-principal output: take the gcd when every generator shares it
        Polynomial g = basis[0];
        for (std::size_t i = 1; i < basis.size(); ++i) g = poly_gcd(g, basis[i]);
        if (g.is_constant())
            throw MathError("chow form: elimination ideal is not principal at this scale");
        ch_u = g;
    }

    // Rewrite in Plücker coordinates p_{i0...ik} = maximal minors of the
    // (k+1) x (N+1) hyperplane coefficient matrix.
    auto subsets = subsets_of_size(n, k + 1);
    std::vector<std::string> pnames;
    for (const auto& s : subsets) {
        std::string nm = "p_";
        for (std::size_t i : s) nm += std::to_string(i);
        pnames.push_back(nm);
    }
    RingPtr pring = PolyRing::make(field, pnames, MonomialOrder::GrevLex);

    // expansion of each Plücker variable as a u-polynomial
    RingPtr uring = elim.ring();
    std::vector<Polynomial> minors;
    for (const auto& s : subsets) {
        std::vector<std::vector<Polynomial>> mm(k + 1,
                                                std::vector<Polynomial>(k + 1));
        for (std::size_t r = 0; r <= k; ++r)
            for (std::size_t c = 0; c <= k; ++c) {
                long idx = uring->index_of("u" + std::to_string(r) + "_" + std::to_string(s[c]));
                if (idx < 0) throw MathError("chow form: missing dual variable");
                mm[r][c] = Polynomial::variable(uring, static_cast<std::size_t>(idx));
            }
        minors.push_back(small_det(mm, uring));
    }

    unsigned D = 0;
    {
        auto dd = ch_u.weighted_homogeneous();
        if (!dd.first) throw MathError("chow form: candidate is not homogeneous");
        D = static_cast<unsigned>(*dd.second / (k + 1));
    }

    // solve sum c_m * expand(m) = ch_u by linear algebra over the monomials
    auto pmons = monomials_of_degree(pring, D);
    std::map<Exponents, std::size_t> row_of;
    std::vector<Polynomial> expansions;
    for (const auto& e : pmons) {
        Polynomial x = Polynomial::constant(uring, 1);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned rep = 0; rep < e[i]; ++rep) x = x * minors[i];
        expansions.push_back(std::move(x));
    }
    for (const auto& x : expansions)
        for (const auto& t : x.terms())
            if (!row_of.count(t.exp)) row_of[t.exp] = row_of.size();
    for (const auto& t : ch_u.terms())
        if (!row_of.count(t.exp)) row_of[t.exp] = row_of.size();

    const std::size_t rows = row_of.size(), cols = pmons.size();
    std::vector<std::vector<Scalar>> A(rows, std::vector<Scalar>(cols + 1, Scalar::zero(field)));
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& t : expansions[c].terms()) A[row_of[t.exp]][c] = t.coeff;
    for (const auto& t : ch_u.terms()) A[row_of[t.exp]][cols] = t.coeff;

    // Gaussian solve (least structured solution; free unknowns set to zero)
    std::vector<long> pivot_of_col(cols, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        Scalar inv = A[r][c].inverse();
        for (std::size_t cc = 0; cc <= cols; ++cc) A[r][cc] = A[r][cc] * inv;
        for (std::size_t rr = 0; rr < rows; ++rr) {
            if (rr == r || A[rr][c].is_zero()) continue;
            Scalar f = A[rr][c];
            for (std::size_t cc = 0; cc <= cols; ++cc) A[rr][cc] = A[rr][cc] - f * A[r][cc];
        }
        pivot_of_col[c] = static_cast<long>(r);
        ++r;
    }
    for (std::size_t rr = r; rr < rows; ++rr)
        if (!A[rr][cols].is_zero())
            throw MathError("chow form: not expressible in Plücker coordinates");

    Polynomial result(pring);
    for (std::size_t c = 0; c < cols; ++c) {
        if (pivot_of_col[c] < 0) continue;
        Scalar v = A[static_cast<std::size_t>(pivot_of_col[c])][cols];
        if (!v.is_zero()) result = result + Polynomial::monomial(pring, pmons[c], v);
    }
    if (result.is_zero()) throw MathError("chow form: empty rewrite");
    out.kind = ChowForm::Kind::General;
    out.form = result.normalized();
    return out;
}

InducedMap induced_chow_map(const Morphism& f, unsigned D, unsigned t,
                            const MacaulayOptions& opts, const GroebnerBudget& budget) {
    if (D < 1) throw MathError("induced map needs D >= 1");
    if (t != 1)
        throw MathError("induced map: only the hypersurface case (t = 1) is supported "
                        "symbolically at this scale");
    const RingPtr& ring = f.ring();
    const FieldPtr& field = ring->field();
    const unsigned N = static_cast<unsigned>(f.ambient_N());

    BigInt tau = tau_count(N, D);
    if (!tau.fits_ulong_p()) throw MathError("coefficient space too large");
    const std::size_t nparams = tau.get_ui();

    FieldPtr ext_field;
    Morphism fe;
    if (field->kind == FieldKind::Function) {
        if (field->parameters.size() != nparams)
            throw MathError("parameter field does not match the coefficient-space dimension");
        for (const auto& c : f.coords())
            for (const auto& term : c.terms())
                if (!term.coeff.is_base_constant())
                    throw MathError("induced map: morphism coefficients must be parameter-free");
        ext_field = field;
        fe = f;
    } else {
        std::vector<std::string> params =
            fresh_names("a", nparams, ring->vars());
        ext_field = FieldDesc::function(params, field);
        RingPtr ext_ring = PolyRing::make(ext_field, ring->vars(), ring->order());
        std::vector<long> idmap(ring->nvars());
        for (std::size_t i = 0; i < ring->nvars(); ++i) idmap[i] = static_cast<long>(i);
        std::vector<Polynomial> coords;
        for (const auto& c : f.coords())
            coords.push_back(c
                                 .map_coeffs(ext_field,
                                             [&](const Scalar& s) {
                                                 return Scalar::of_rational(
                                                     ext_field, s.rational_value());
                                             })
                                 .map_ring(ext_ring, idmap));
        fe = Morphism::make(ext_ring, std::move(coords));
    }

    // generic form of degree D with the parameters as coefficients
    const RingPtr& ext_ring = fe.ring();
    auto mons = monomials_of_degree(ext_ring, D);
    if (mons.size() != nparams) throw MathError("coefficient count mismatch");
    Polynomial g(ext_ring);
    for (std::size_t i = 0; i < mons.size(); ++i)
        g = g + Polynomial::monomial(ext_ring, mons[i], Scalar::parameter(ext_field, i));

    ImageViaResultant ivr = image_via_resultant(fe, g, opts, budget);
    Polynomial image = ivr.image_form.normalized();
    auto [homog, deg] = image.weighted_homogeneous();
    if (!homog) throw MathError("induced map: image form is not homogeneous");
    BigInt expected = big_pow(BigInt(f.degree()), N - t) * D;
    if (BigInt(static_cast<unsigned long>(*deg)) != expected)
        throw MathError("degenerate image degree for the symbolic generic member");
    const unsigned Dp = static_cast<unsigned>(*deg);

    InducedMap out;
    out.source_form_degree = D;
    out.target_form_degree = Dp;
    out.source_dim = nparams - 1;
    BigInt taup = tau_count(N, Dp);
    out.target_dim = taup.get_ui() - 1;
    out.algebraic_degree = static_cast<unsigned>(big_pow(BigInt(f.degree()), N - t + 1).get_ui());
    out.coeff_ring = ext_field->param_ring;
    out.main_vars = ring->vars();
    out.used_groebner_fallback = ivr.used_groebner_fallback;

    auto target_mons = monomials_of_degree(ext_ring, Dp);
    std::map<Exponents, Scalar> coeff_of;
    for (const auto& term : image.terms()) coeff_of.emplace(term.exp, term.coeff);
    for (const auto& m : target_mons) {
        auto it = coeff_of.find(m);
        Polynomial coord = it == coeff_of.end()
                               ? Polynomial::zero(ext_field->param_ring)
                               : [&] {
                                     const FracData& fr = it->second.frac();
                                     if (!(fr.den.is_constant() &&
                                           fr.den.constant_value().is_one()))
                                         throw MathError("induced map coefficient has a "
                                                         "denominator after normalization");
                                     return fr.num;
                                 }();
        if (!coord.is_zero()) {
            auto [ch, cd] = coord.weighted_homogeneous();
            if (!ch || *cd != out.algebraic_degree)
                throw MathError("induced map coordinate is not homogeneous of degree d^(N-t+1)");
        }
        out.coords.push_back(std::move(coord));
    }
    return out;
}

namespace {

bool vanishes_at(const Polynomial& g, const std::vector<Scalar>& pt) {
    return g.evaluate(pt).is_zero();
}

} // namespace

SelfMapWitness self_map_restriction(const InducedMap& phi, const Subvariety& Y,
                                    const std::vector<Scalar>& X_coeffs,
                                    const GroebnerBudget& budget) {
    const RingPtr& cring = phi.coeff_ring;
    if (!Y.ring()->same(*cring))
        throw MathError("self-map restriction: Y lives outside the coefficient space");
    if (X_coeffs.size() != cring->nvars())
        throw MathError("self-map restriction: point arity mismatch");
    for (const auto& g : Y.gens())
        if (!g.is_zero() && !vanishes_at(g, X_coeffs))
            throw MathError("self-map restriction: the point is not on Y");

    SelfMapWitness out;
    const auto& ybasis = Y.canonical_basis();

    if (phi.source_dim == phi.target_dim &&
        phi.source_form_degree == phi.target_form_degree) {
        out.map_coords = phi.coords;
    } else {
        // degree-preserving root on Y
        if (phi.target_form_degree % phi.source_form_degree)
            throw MathError("self-map restriction: degrees are incompatible");
        unsigned k = phi.target_form_degree / phi.source_form_degree;
        FieldPtr fn = FieldDesc::function(cring->vars(), cring->field());
        RingPtr main = PolyRing::make(fn, phi.main_vars, MonomialOrder::GrevLex);
        auto tmons = monomials_of_degree(main, phi.target_form_degree);
        if (tmons.size() != phi.coords.size())
            throw MathError("self-map restriction: inconsistent induced map data");
        Polynomial F(main);
        for (std::size_t i = 0; i < tmons.size(); ++i) {
            Polynomial reduced = normal_form(phi.coords[i], ybasis);
            if (reduced.is_zero()) continue;
            Scalar c = Scalar::from_fraction(fn, reduced,
                                             Polynomial::constant(fn->param_ring, 1));
            F = F + Polynomial::monomial(main, tmons[i], c);
        }
        if (F.is_zero())
            throw MathError("self-map restriction: the induced map vanishes on Y");
        Polynomial root;
        try {
            root = kth_root(F, k).normalized();
        } catch (const MathError&) {
            throw MathError("self-map restriction: the image form is not a k-th power on Y");
        }
        auto smons = monomials_of_degree(main, phi.source_form_degree);
        std::map<Exponents, Scalar> coeff_of;
        for (const auto& term : root.terms()) coeff_of.emplace(term.exp, term.coeff);
        for (const auto& m : smons) {
            auto it = coeff_of.find(m);
            if (it == coeff_of.end()) {
                out.map_coords.push_back(Polynomial::zero(cring));
                continue;
            }
            const FracData& fr = it->second.frac();
            if (!(fr.den.is_constant() && fr.den.constant_value().is_one()))
                throw MathError("self-map restriction: root coefficient has a denominator");
            out.map_coords.push_back(normal_form(fr.num, ybasis));
        }
    }

    // shrink loop
    Subvariety cur = Y;
    long cap = std::max<long>(1, Y.dimension() + 2);
    for (long round = 0; round <= cap; ++round) {
        const auto& basis = cur.canonical_basis();
        bool self_map = true;
        for (const auto& q : basis) {
            Polynomial composed = q.substitute(out.map_coords);
            if (!normal_form(composed, basis).is_zero()) {
                self_map = false;
                break;
            }
        }
        if (self_map) {
            out.certified = true;
            out.restricted = cur;
            return out;
        }
        if (round == cap) break;

        // closure of psi(cur) via graph elimination
        std::vector<std::string> bnames = fresh_names("b", cring->nvars(), cring->vars());
        std::vector<std::string> vars = cring->vars();
        vars.insert(vars.end(), bnames.begin(), bnames.end());
        unsigned psi_deg = 1;
        for (const auto& c : out.map_coords)
            if (!c.is_zero()) psi_deg = static_cast<unsigned>(c.total_degree());
        std::vector<unsigned> weights(cring->nvars(), 1);
        weights.insert(weights.end(), cring->nvars(), psi_deg);
        RingPtr ext = PolyRing::make(cring->field(), vars, MonomialOrder::Lex, weights);
        std::vector<long> lift(cring->nvars());
        for (std::size_t i = 0; i < cring->nvars(); ++i) lift[i] = static_cast<long>(i);
        std::vector<Polynomial> gens;
        for (const auto& g : basis) gens.push_back(g.map_ring(ext, lift));
        for (std::size_t i = 0; i < cring->nvars(); ++i)
            gens.push_back(Polynomial::variable(ext, cring->nvars() + i) -
                           out.map_coords[i].map_ring(ext, lift));
        Ideal elim = eliminate(Ideal(ext, std::move(gens)), cring->vars(), budget);
        std::vector<long> back(elim.ring()->nvars(), -1);
        for (std::size_t i = 0; i < elim.ring()->nvars(); ++i)
            for (std::size_t j = 0; j < bnames.size(); ++j)
                if (elim.ring()->vars()[i] == bnames[j]) back[i] = static_cast<long>(j);
        std::vector<Polynomial> next_gens;
        for (const auto& g : elim.gens()) next_gens.push_back(g.map_ring(cring, back));
        for (const auto& g : basis) next_gens.push_back(g);

        Subvariety W = Subvariety::make(cring, std::move(next_gens));
        for (const auto& g : W.canonical_basis())
            if (!vanishes_at(g, X_coeffs))
                throw MathError("self-map restriction: the point left every component");

        // component selection when the intersection is principal
        Subvariety next = W;
        const auto& wb = W.canonical_basis();
        if (wb.size() == 1) {
            ComponentSplit split = extract_components(wb[0]);
            std::vector<Polynomial> candidates;
            for (const auto& [m, mult] : split.monomials) candidates.push_back(m);
            for (const auto& [l, mult] : split.linears) candidates.push_back(l);
            for (const auto& [r2, mult] : split.remainder) candidates.push_back(r2);
            for (const auto& c : candidates)
                if (vanishes_at(c, X_coeffs)) {
                    next = Subvariety::make(cring, {c});
                    break;
                }
        }
        if (next.canonical_key() == cur.canonical_key())
            throw MathError("self-map restriction: the shrinking loop stalled");
        cur = next;
        ++out.shrink_steps;
    }
    throw MathError("self-map restriction: no self-map within the dimension bound");
}

BigInt bezout_degree_bound(unsigned M, unsigned D, unsigned d, unsigned m, unsigned t,
                           unsigned N, unsigned j) {
    if (M < 1 || D < 1 || d < 1 || m < 1 || t < 1 || N < 1)
        throw MathError("bezout bound requires positive inputs");
    BigInt base = (BigInt(M) + 1) *
                  ((big_pow(BigInt(d), M) * D - big_pow(BigInt(d), m)) * (N - t) + 1);
    if (j == 0) return base;
    BigInt result = 1;
    BigInt dmt = big_pow(BigInt(d), static_cast<unsigned long>(m) * t);
    for (unsigned i = 0; i < j; ++i) result *= big_pow(dmt, i) * base;
    return result;
}

namespace {

// rational roots of a primitive integer univariate polynomial (variable 0)
std::vector<Rational> rational_roots(const Polynomial& b) {
    std::vector<Rational> roots;
    if (b.is_zero() || b.is_constant()) return roots;
    long lo = b.degree_in(0);
    BigInt lead, trail;
    long low_exp = -1;
    for (const auto& t : b.terms()) {
        if (static_cast<long>(t.exp[0]) == lo) lead = t.coeff.rational_value().get_num();
        if (low_exp < 0 || static_cast<long>(t.exp[0]) < low_exp) {
            low_exp = static_cast<long>(t.exp[0]);
            trail = t.coeff.rational_value().get_num();
        }
    }
    if (low_exp > 0) roots.push_back(Rational(0));
    auto divisors = [](BigInt v) {
        std::vector<BigInt> out;
        v = abs(v);
        for (BigInt i = 1; i * i <= v; ++i)
            if (v % i == 0) {
                out.push_back(i);
                out.push_back(v / i);
            }
        return out;
    };
    std::vector<Scalar> pt(1, Scalar::zero(b.ring()->field()));
    for (const auto& num : divisors(trail))
        for (const auto& den : divisors(lead)) {
            for (int sign = 1; sign >= -1; sign -= 2) {
                Rational cand(sign * num, den);
                cand.canonicalize();
                pt[0] = Scalar::of_rational(b.ring()->field(), cand);
                if (b.evaluate(pt).is_zero()) roots.push_back(cand);
            }
        }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// candidate rational linear factors of a homogeneous rational polynomial by
// restriction to deterministic lines and gradient lifting
std::vector<Polynomial> linear_factor_candidates(const Polynomial& R) {
    std::vector<Polynomial> out;
    const RingPtr& ring = R.ring();
    const FieldPtr& field = ring->field();
    if (field->kind != FieldKind::Rationals) return out;
    const std::size_t n = ring->nvars();

    RingPtr sring = PolyRing::make(field, {"s"}, MonomialOrder::GrevLex);
    unsigned long seed = 0x9e3779b97f4a7c15ULL;
    auto next = [&seed]() {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<long>((seed >> 40) % 19) - 9;
    };

    for (unsigned attempt = 0; attempt < 6; ++attempt) {
        std::vector<long> P(n), Q(n);
        for (auto& v : P) v = next();
        for (auto& v : Q) v = next();
        std::vector<Polynomial> images;
        for (std::size_t i = 0; i < n; ++i)
            images.push_back(Polynomial::variable(sring, 0) *
                                 Scalar::of_int(field, P[i]) +
                             Polynomial::constant(sring, Q[i]));
        Polynomial B = R.substitute(images);
        if (B.is_zero() || B.degree_in(0) != static_cast<long>(R.total_degree())) continue;
        for (const auto& r : rational_roots(rational_primitive(B).first)) {
            std::vector<Scalar> x0;
            for (std::size_t i = 0; i < n; ++i)
                x0.push_back(Scalar::of_rational(field, r * P[i] + Q[i]));
            Polynomial cand(ring);
            for (std::size_t i = 0; i < n; ++i) {
                Scalar gi = R.derivative(i).evaluate(x0);
                if (!gi.is_zero()) cand = cand + Polynomial::variable(ring, i) * gi;
            }
            if (!cand.is_zero() && cand.total_degree() == 1)
                out.push_back(rational_primitive(cand).first);
        }
        if (!out.empty()) return out;
    }
    return out;
}

} // namespace

ComponentSplit extract_components(const Polynomial& Z) {
    if (Z.is_zero()) throw MathError("component extraction of the zero polynomial");
    ComponentSplit out;
    const RingPtr& ring = Z.ring();
    auto dec = squarefree_decomposition(Z);
    out.unit = dec.unit;
    for (auto& [factor, mult] : dec.factors) {
        Polynomial rest = factor;
        // coordinate hyperplanes
        for (std::size_t v = 0; v < ring->nvars(); ++v) {
            Polynomial var = Polynomial::variable(ring, v);
            Polynomial q;
            if (rest.uses_var(v) && try_exact_divide(rest, var, q)) {
                out.monomials.push_back({var, mult});
                rest = q;
            }
        }
        if (rest.is_constant()) continue;
        if (rest.total_degree() == 1) {
            out.linears.push_back({rest.normalized(), mult});
            continue;
        }
        bool homogeneous = rest.weighted_homogeneous().first;
        if (homogeneous) {
            bool progress = true;
            while (progress && !rest.is_constant() && rest.total_degree() > 1) {
                progress = false;
                for (const auto& cand : linear_factor_candidates(rest)) {
                    Polynomial q;
                    if (try_exact_divide(rest, cand, q)) {
                        out.linears.push_back({cand, mult});
                        rest = q;
                        progress = true;
                        break;
                    }
                }
            }
        }
        if (rest.is_constant()) continue;
        if (rest.total_degree() == 1)
            out.linears.push_back({rest.normalized(), mult});
        else
            out.remainder.push_back({rest.normalized(), mult});
    }
    return out;
}

} // namespace subdyn
