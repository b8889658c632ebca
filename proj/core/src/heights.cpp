#include "subdyn/heights.hpp"

#include "subdyn/gcd.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace subdyn {

Real poly_height(const Polynomial& p) {
    if (p.is_zero()) throw MathError("height of the zero polynomial");
    if (p.ring()->field()->kind != FieldKind::Rationals)
        throw MathError("height requires rational coefficients");
    Polynomial prim = rational_primitive(p).first;
    BigInt max_abs = 0;
    for (const auto& t : prim.terms()) {
        BigInt a = abs(BigInt(t.coeff.rational_value().get_num()));
        if (a > max_abs) max_abs = a;
    }
    return ln_big(max_abs);
}

Real variety_height(const Subvariety& X, const GroebnerBudget& budget) {
    ChowForm ch = chow_form(X, budget);
    return poly_height(ch.form);
}

namespace {

Real ln_int(unsigned long v) { return log(Real(v)); }

} // namespace

ConstantReport height_constant_C(unsigned N, unsigned d, unsigned D, const Real& hf,
                                 bool literal_mode) {
    if (N < 1 || D < 1 || d < 2) throw MathError("height constant requires N,D >= 1 and d >= 2");
    ConstantReport r;
    r.N = N;
    r.d = d;
    r.D = D;
    r.hf = hf;
    r.literal_mode = literal_mode;

    BigInt dn = big_pow(BigInt(d), N);         // d^N
    BigInt dn1 = big_pow(BigInt(d), N - 1);    // d^(N-1)
    r.tau_D = tau_count(N, D);
    BigInt Dp = dn1 * D; // generic image degree d^(N-1) D
    if (!Dp.fits_ulong_p()) throw MathError("image degree too large");
    r.tau_Dprime = tau_count(N, Dp.get_ui());
    r.e_D = (r.tau_D - 1) * dn + 2;
    r.wustholz_log = wustholz_height_bound(N, D, d);

    Real dn1_r = real_of(dn1);
    Real lnN = ln_int(N);

    // upper bound, degree-ratio 1 (the hand-computed, degree-preserved form)
    r.upper_slope = Real(2) * D;
    r.upper_intercept = (lnN + r.wustholz_log) / dn1_r;
    r.upper_constant = r.upper_slope * hf + r.upper_intercept;

    // lower bound, general formula
    {
        BigInt binom_arg_top = r.tau_D - 1 + r.e_D - dn;
        BigInt binom_arg_bot = r.e_D - dn;
        if (!binom_arg_top.fits_ulong_p() || !binom_arg_bot.fits_ulong_p())
            throw MathError("binomial arguments too large");
        BigInt big_binom = big_binomial(binom_arg_top.get_ui(), binom_arg_bot.get_ui());
        if (!r.tau_D.fits_ulong_p()) throw MathError("tau too large");
        BigInt K = 4 * r.tau_D * (r.tau_D + 1) * big_pow(dn, r.tau_D.get_ui());
        Real lntaup = ln_big(r.tau_Dprime);
        Real inner_const = lnN + r.wustholz_log + lntaup +
                           real_of(BigInt(r.tau_D + 7)) * ln_big(BigInt(r.tau_D + 1)) * real_of(dn);
        Real Kr = real_of(K);
        r.lower_slope = Kr * Real(2) * D; // (1/d^(N-1)) * K * 2 d^(N-1) D
        r.lower_intercept = (lntaup + ln_big(big_binom) + Kr * inner_const) / dn1_r;
        r.lower_constant = r.lower_slope * hf + r.lower_intercept;
    }

    // literal reproduction mode: ceil'd resultant bound, d^tau factor,
    // binomial C(3 tau - 2, 2 tau - 2), doubled log N term
    if (literal_mode) {
        if (!r.tau_D.fits_ulong_p()) throw MathError("tau too large");
        unsigned long tau = r.tau_D.get_ui();
        BigInt lit_binom = big_binomial(3 * tau - 2, 2 * tau - 2);
        BigInt K = 4 * r.tau_D * (r.tau_D + 1) * big_pow(BigInt(d), tau);
        Real W_ceil = real_of(BigInt(floor_snapped(r.wustholz_log) + 1));
        Real inner_const = Real(2) * lnN + W_ceil +
                           real_of(BigInt(r.tau_D + 7)) * ln_big(BigInt(r.tau_D + 1)) * real_of(dn);
        Real Kr = real_of(K);
        r.literal_slope = Kr * Real(2) * D;
        r.literal_intercept = (lnN + ln_big(lit_binom) + Kr * inner_const) / dn1_r;
        r.lower_constant_literal = r.literal_slope * hf + r.literal_intercept;
    }

    Real lower = literal_mode ? r.lower_constant_literal : r.lower_constant;
    r.combined = r.upper_constant > lower ? r.upper_constant : lower;
    return r;
}

std::string ConstantReport::serialize() const {
    std::ostringstream os;
    os << "N=" << N << " d=" << d << " D=" << D << "\n";
    os << "hf=" << format_real(hf) << "\n";
    os << "tau_D=" << tau_D.get_str() << "\n";
    os << "tau_Dprime=" << tau_Dprime.get_str() << "\n";
    os << "e_D=" << e_D.get_str() << "\n";
    os << "wustholz_log=" << format_real(wustholz_log) << "\n";
    os << "upper_const=" << format_real(upper_constant) << " (slope=" << format_real(upper_slope)
       << " intercept=" << format_real(upper_intercept) << ")\n";
    os << "lower_const=" << format_real(lower_constant) << " (slope=" << format_real(lower_slope)
       << " intercept=" << format_real(lower_intercept) << ")\n";
    if (literal_mode) {
        os << "lower_const_literal=" << format_real(lower_constant_literal)
           << " (slope=" << format_real(literal_slope)
           << " intercept=" << format_real(literal_intercept) << ")\n";
        os << "mode=literal\n";
    } else {
        os << "mode=formula\n";
    }
    os << "C=" << format_real(combined) << "\n";
    os << "precision_bits=" << real_precision_bits() << "\n";
    return os.str();
}

Real height_difference_bound(const Real& C, unsigned D, unsigned d, unsigned N, unsigned t) {
    if (d < 2) throw MathError("height difference bound requires d >= 2");
    if (t < 1 || t > N) throw MathError("height difference bound requires 1 <= t <= N");
    // C*D / ((d-1) d^(N-t-1)); N-t-1 may be -1 when t = N
    Real denom = Real(d - 1);
    long e = static_cast<long>(N) - static_cast<long>(t) - 1;
    if (e >= 0)
        denom *= real_of(big_pow(BigInt(d), static_cast<unsigned long>(e)));
    else
        denom /= Real(d);
    return C * Real(D) / denom;
}

HeightEstimate canonical_height(const Morphism& f, const Subvariety& X, unsigned iters,
                                const GroebnerBudget& budget) {
    if (f.degree() < 2) throw MathError("canonical height requires degree d >= 2");
    if (f.ring()->field()->kind != FieldKind::Rationals)
        throw MathError("canonical height requires rational coefficients");
    if (X.codimension() != 1) throw MathError("canonical height: hypersurfaces only");

    const unsigned N = static_cast<unsigned>(f.ambient_N());
    BigInt D0 = X.degree();
    if (!D0.fits_ulong_p()) throw MathError("degree too large");

    HeightEstimate est;
    est.iterations = iters;
    est.degree_sequence.push_back(D0);

    Subvariety cur = X;
    for (unsigned i = 0; i < iters; ++i) {
        cur = forward_image(f, cur, budget);
        BigInt deg = cur.degree();
        if (deg <= 0) throw MathError("canonical height: degree anomaly in the orbit");
        est.degree_sequence.push_back(deg);
    }
    Real h = variety_height(cur, budget);
    BigInt dn = big_pow(BigInt(f.degree()), iters);
    est.value = real_of(D0) * h / (real_of(est.degree_sequence.back()) * real_of(dn));

    ConstantReport cr =
        height_constant_C(N, f.degree(), static_cast<unsigned>(D0.get_ui()), f.height());
    Real dd = Real(f.degree());
    est.error_bound = cr.combined * real_of(BigInt(D0 * D0)) / (real_of(dn) * (Real(1) - Real(1) / dd));
    return est;
}

namespace {

// All primitive, sign-normalized integer coefficient vectors over the given
// monomial count with entries in [-bound, bound], lexicographic order.
void enumerate_vectors(std::size_t len, long bound,
                       const std::function<void(const std::vector<long>&)>& emit) {
    std::vector<long> v(len, -bound);
    while (true) {
        bool nonzero = false;
        long first_nonzero = 0;
        for (std::size_t i = 0; i < len; ++i)
            if (v[i] != 0) {
                first_nonzero = v[i];
                nonzero = true;
                break;
            }
        if (nonzero && first_nonzero > 0) {
            BigInt g = 0;
            for (long c : v) mpz_gcd_ui(g.get_mpz_t(), g.get_mpz_t(),
                                        static_cast<unsigned long>(std::llabs(c)));
            if (g == 1) emit(v);
        }
        std::size_t k = len;
        while (k > 0) {
            if (v[k - 1] < bound) {
                ++v[k - 1];
                break;
            }
            v[k - 1] = -bound;
            --k;
        }
        if (k == 0) break;
    }
}

} // namespace

PreperiodicSearchResult preperiodic_search(const Morphism& f, unsigned D_max,
                                           unsigned coeff_bound, unsigned iters,
                                           unsigned threads, unsigned long max_candidates,
                                           const BigInt& degree_cap,
                                           const GroebnerBudget& budget) {
    if (f.ring()->field()->kind != FieldKind::Rationals)
        throw MathError("preperiodic search runs over the rationals");
    PreperiodicSearchResult result;
    if (coeff_bound == 0 || D_max == 0) return result;

    const RingPtr& ring = f.ring();
    BigInt cap = degree_cap;
    if (cap == 0) cap = BigInt(8) * D_max;

    // enumerate candidates per degree
    std::vector<Polynomial> candidates;
    for (unsigned deg = 1; deg <= D_max; ++deg) {
        auto mons = monomials_of_degree(ring, deg);
        enumerate_vectors(mons.size(), static_cast<long>(coeff_bound),
                          [&](const std::vector<long>& v) {
                              if (candidates.size() >= max_candidates) {
                                  result.budget_exceeded = true;
                                  return;
                              }
                              std::vector<Term> terms;
                              for (std::size_t i = 0; i < mons.size(); ++i)
                                  if (v[i])
                                      terms.push_back(
                                          {mons[i], Scalar::of_int(ring->field(), v[i])});
                              Polynomial g = Polynomial::from_terms(ring, std::move(terms));
                              // duplicates of lower-degree varieties are skipped
                              if (squarefree_part(g).total_degree() != deg) return;
                              candidates.push_back(std::move(g));
                          });
    }
    result.candidates = candidates.size();
    if (result.budget_exceeded)
        throw ResourceError("preperiodic search: enumeration exceeded the candidate budget");

    std::vector<std::optional<PreperiodicHit>> hits(candidates.size());
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Subvariety X = Subvariety::make(ring, {candidates[i]});
            // prefilter: positive canonical height certifies a wandering orbit
            try {
                HeightEstimate pre = canonical_height(f, X, 1, budget);
                if (pre.value - pre.error_bound > 0) continue;
            } catch (const MathError&) {
                // fall through to the orbit test
            }
            OrbitReport orbit = iterate_orbit(f, X, iters, cap, budget);
            if (orbit.period) {
                PreperiodicHit hit;
                hit.variety = X;
                hit.orbit = std::move(orbit);
                hit.generator = X.canonical_basis()[0].str();
                hits[i] = std::move(hit);
            }
        }
    };

    if (threads <= 1) {
        worker(0, candidates.size());
    } else {
        std::vector<std::thread> pool;
        std::mutex emu;
        std::exception_ptr eptr;
        auto guarded = [&](std::size_t b, std::size_t e) {
            try {
                worker(b, e);
            } catch (...) {
                std::lock_guard<std::mutex> lock(emu);
                if (!eptr) eptr = std::current_exception();
            }
        };
        std::size_t chunk = (candidates.size() + threads - 1) / threads;
        for (unsigned tix = 0; tix < threads; ++tix) {
            std::size_t b = tix * chunk;
            std::size_t e = std::min(candidates.size(), b + chunk);
            if (b >= e) break;
            pool.emplace_back(guarded, b, e);
        }
        for (auto& th : pool) th.join();
        if (eptr) std::rethrow_exception(eptr);
    }

    for (auto& h : hits)
        if (h) result.hits.push_back(std::move(*h));
    return result;
}

} // namespace subdyn
