#include "subdyn/resultant.hpp"

#include "subdyn/gcd.hpp"
#include "subdyn/matrix.hpp"

#include <algorithm>
#include <map>

namespace subdyn {

namespace {

struct MacaulaySetup {
    std::vector<Exponents> monomials;       // degree-t monomials, ring order desc
    std::vector<std::size_t> row_form;      // which form fills each row
    std::vector<bool> non_reduced;          // divisible by >= 2 of the x_i^{d_i}
};

MacaulaySetup macaulay_setup(const RingPtr& ring, const std::vector<unsigned>& degs) {
    unsigned t = 1;
    for (unsigned d : degs) t += d - 1;
    MacaulaySetup s;
    s.monomials = monomials_of_degree(ring, t);
    s.row_form.resize(s.monomials.size());
    s.non_reduced.resize(s.monomials.size());
    for (std::size_t r = 0; r < s.monomials.size(); ++r) {
        const Exponents& m = s.monomials[r];
        int count = 0;
        std::size_t first = 0;
        for (std::size_t i = 0; i < degs.size(); ++i)
            if (m[i] >= degs[i]) {
                if (count == 0) first = i;
                ++count;
            }
        s.row_form[r] = first;
        s.non_reduced[r] = count >= 2;
    }
    return s;
}

// Entries of the Macaulay matrix restricted to the given row set.
std::vector<std::vector<Scalar>> macaulay_rows(const RingPtr& ring,
                                               const std::vector<Polynomial>& forms,
                                               const std::vector<unsigned>& degs,
                                               const MacaulaySetup& s,
                                               const std::vector<std::size_t>& rows) {
    std::map<Exponents, std::size_t> col_of;
    for (std::size_t c = 0; c < rows.size(); ++c) col_of[s.monomials[rows[c]]] = c;
    std::vector<std::vector<Scalar>> out(rows.size(),
                                         std::vector<Scalar>(rows.size(),
                                                             Scalar::zero(ring->field())));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Exponents& m = s.monomials[rows[r]];
        std::size_t fi = s.row_form[rows[r]];
        Exponents shift = m;
        shift[fi] -= degs[fi];
        for (const auto& t : forms[fi].terms()) {
            Exponents col = exp_mul(t.exp, shift);
            auto it = col_of.find(col);
            if (it != col_of.end()) out[r][it->second] = t.coeff;
        }
    }
    return out;
}

Scalar det_scalar_matrix(const RingPtr& ring, std::vector<std::vector<Scalar>> m) {
    const FieldPtr& field = ring->field();
    if (field->kind != FieldKind::Function) return det_field(std::move(m), field);

    // Parameter-field entries: scale rows denominator-free and run Bareiss
    // over the parameter ring.
    const RingPtr& pring = field->param_ring;
    Polynomial row_scale_total = Polynomial::constant(pring, 1);
    std::vector<std::vector<Polynomial>> pm(m.size());
    for (std::size_t r = 0; r < m.size(); ++r) {
        Polynomial lcm = Polynomial::constant(pring, 1);
        for (const auto& e : m[r]) {
            if (e.is_zero()) continue;
            lcm = poly_lcm(lcm, e.frac().den);
        }
        row_scale_total = row_scale_total * lcm;
        pm[r].reserve(m.size());
        for (const auto& e : m[r]) {
            if (e.is_zero()) {
                pm[r].push_back(Polynomial::zero(pring));
            } else {
                pm[r].push_back(e.frac().num * exact_divide(lcm, e.frac().den));
            }
        }
    }
    Polynomial det = det_bareiss(std::move(pm), pring);
    return Scalar::from_fraction(field, std::move(det), std::move(row_scale_total));
}

Polynomial shear_transform(const Polynomial& p, unsigned k, bool reverse) {
    const RingPtr& r = p.ring();
    std::vector<Polynomial> images;
    images.reserve(r->nvars());
    for (std::size_t i = 0; i < r->nvars(); ++i) images.push_back(Polynomial::variable(r, i));
    Scalar ks = Scalar::of_int(r->field(), static_cast<long>(k));
    if (!reverse) {
        for (std::size_t i = 0; i + 1 < r->nvars(); ++i)
            images[i] = images[i] + Polynomial::variable(r, i + 1) * ks;
    } else {
        for (std::size_t i = 1; i < r->nvars(); ++i)
            images[i] = images[i] + Polynomial::variable(r, i - 1) * ks;
    }
    return p.substitute(images);
}

} // namespace

Scalar macaulay_resultant(const std::vector<Polynomial>& forms, const MacaulayOptions& opts) {
    if (forms.empty()) throw MathError("macaulay resultant of an empty system");
    const RingPtr& ring = forms[0].ring();
    if (forms.size() != ring->nvars())
        throw MathError("macaulay resultant requires a square system (n+1 forms, n+1 variables)");
    if (!ring->has_unit_weights())
        throw MathError("macaulay resultant requires the standard grading");
    std::vector<unsigned> degs;
    degs.reserve(forms.size());
    for (const auto& f : forms) {
        if (!f.ring()->same(*ring)) throw MathError("resultant forms live in different rings");
        if (f.is_zero()) return Scalar::zero(ring->field());
        auto [homog, deg] = f.weighted_homogeneous();
        if (!homog) throw MathError("resultant input is not homogeneous");
        if (*deg < 1) throw MathError("resultant degrees must be >= 1");
        degs.push_back(static_cast<unsigned>(*deg));
    }

    std::vector<Polynomial> cur = forms;
    for (unsigned attempt = 0; attempt <= opts.max_retries; ++attempt) {
        MacaulaySetup s = macaulay_setup(ring, degs);
        std::vector<std::size_t> all_rows(s.monomials.size());
        for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
        std::vector<std::size_t> minor_rows;
        for (std::size_t i = 0; i < all_rows.size(); ++i)
            if (s.non_reduced[i]) minor_rows.push_back(i);

        Scalar det_minor = det_scalar_matrix(ring, macaulay_rows(ring, cur, degs, s, minor_rows));
        if (!det_minor.is_zero()) {
            Scalar det_full = det_scalar_matrix(ring, macaulay_rows(ring, cur, degs, s, all_rows));
            return det_full / det_minor;
        }
        // deterministic unipotent shear; the resultant is invariant
        cur.clear();
        for (const auto& f : forms)
            cur.push_back(shear_transform(f, attempt / 2 + 1, attempt % 2 == 1));
    }
    throw DegenerateError("macaulay resultant degenerate after all coordinate changes");
}

Real wustholz_height_bound(unsigned N, unsigned D, unsigned d) {
    if (N < 1 || D < 1 || d < 1) throw MathError("wustholz bound requires N, D, d >= 1");
    BigInt dn = big_pow(BigInt(d), N);
    BigInt arg = BigInt(D) + BigInt(N) * dn + 1;
    if (!arg.fits_ulong_p()) throw MathError("wustholz bound argument too large");
    BigInt B = big_binomial(arg.get_ui(), N);
    Real lnfac;
    if (B.fits_ulong_p()) {
        lnfac = ln_factorial(B.get_ui());
    } else {
        lnfac = lgamma(real_of(B) + 1);
    }
    return real_of(B) + lnfac;
}

Scalar discriminant_locus(const Polynomial& image_form, unsigned k,
                          const MacaulayOptions& opts) {
    if (image_form.is_zero()) throw MathError("discriminant of the zero form");
    const RingPtr& ring = image_form.ring();
    std::vector<Polynomial> partials;
    bool all_zero = true;
    bool all_constant = true;
    for (std::size_t v = 0; v < ring->nvars(); ++v) {
        Polynomial d = image_form.derivative(v, k);
        if (!d.is_zero()) all_zero = false;
        if (!d.is_constant()) all_constant = false;
        partials.push_back(std::move(d));
    }
    if (all_zero) throw MathError("discriminant: derivative order too high, all partials vanish");
    if (all_constant) {
        // Degree-0 system: only the simultaneous vanishing of the constants
        // matters. A unit constant certifies an empty degeneration locus.
        const FieldPtr& field = ring->field();
        for (const auto& c : partials) {
            if (c.is_zero()) continue;
            Scalar v = c.constant_value();
            if (field->kind != FieldKind::Function || v.is_base_constant())
                return Scalar::one(field);
        }
        Scalar prod = Scalar::one(field);
        for (const auto& c : partials)
            if (!c.is_zero()) prod = prod * c.constant_value();
        return prod;
    }
    return macaulay_resultant(partials, opts);
}

} // namespace subdyn
