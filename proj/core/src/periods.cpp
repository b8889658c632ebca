#include "subdyn/periods.hpp"

#include <sstream>

namespace subdyn {

ResiduePeriodReport residue_period(const Morphism& f, const Subvariety& X, unsigned long p,
                                   unsigned max_steps, const GroebnerBudget& budget) {
    if (!good_reduction(f, p))
        throw MathError("residue period: " + std::to_string(p) + " is a prime of bad reduction");
    Morphism fbar = reduce_mod_p(f, p);
    Subvariety Xbar = reduce_mod_p(X, p);

    ResiduePeriodReport rep;
    rep.orbit = iterate_orbit(fbar, Xbar, max_steps, 0, budget);
    if (!rep.orbit.period)
        throw ResourceError("residue period: no repeat within " + std::to_string(max_steps) +
                            " steps");
    rep.m = *rep.orbit.period;
    rep.tail = rep.orbit.tail;
    for (const auto& s : rep.orbit.steps) rep.degrees_mod_p.push_back(s.degree);

    // rational orbit degrees over the same range
    Subvariety cur = X;
    rep.degrees_rational.push_back(cur.degree());
    for (std::size_t i = 1; i < rep.orbit.steps.size(); ++i) {
        cur = forward_image(f, cur, budget);
        rep.degrees_rational.push_back(cur.degree());
    }
    rep.degrees_match = rep.degrees_mod_p == rep.degrees_rational;
    return rep;
}

namespace {

BigInt projective_points(const BigInt& q, const BigInt& dim_plus_1) {
    // (q^(n+1) - 1)/(q - 1) with n+1 = dim_plus_1
    if (!dim_plus_1.fits_ulong_p()) throw MathError("projective space too large");
    return (big_pow(q, dim_plus_1.get_ui()) - 1) / (q - 1);
}

} // namespace

BigInt lemma_m_count_bound(const BigInt& q, unsigned N, unsigned t, unsigned D) {
    if (q < 2) throw MathError("count bound needs a prime power q >= 2");
    if (t < 1 || t > N) throw MathError("count bound needs 1 <= t <= N");
    BigInt total = 0;
    for (unsigned Dp = 1; Dp <= D; ++Dp) {
        BigInt coeffs;
        if (t == 1) {
            coeffs = tau_count(N, Dp); // hypersurface coefficient count
        } else {
            // Chow form of degree Dp in C(N+1, t) Pluecker coordinates
            BigInt pluecker = big_binomial(N + 1, t);
            if (!pluecker.fits_ulong_p()) throw MathError("Pluecker space too large");
            coeffs = big_binomial(pluecker.get_ui() + Dp - 1, Dp);
        }
        total += projective_points(q, coeffs);
    }
    return total;
}

EBound e_bound(unsigned long p, unsigned long v) {
    if (!is_prime(BigInt(p))) throw MathError("e bound: p is not prime");
    if (v < 1) throw MathError("e bound: ramification v >= 1 required");
    EBound out;
    if (p != 2) {
        out.bound = Real(1) + log(Real(v)) / log(Real(2));
    } else {
        Real sqrt5 = sqrt(Real(5));
        Real alpha = (Real(1) + sqrt5) / 2;
        Real arg = (sqrt5 * Real(v) + sqrt(Real(5) * Real(v) * Real(v) + 4)) / 2;
        out.bound = Real(1) + log(arg) / log(alpha);
    }
    out.floor_value = floor_snapped(out.bound);
    return out;
}

GroupCounts group_counts(const BigInt& q, unsigned M, unsigned N) {
    if (q < 2) throw MathError("group counts need q >= 2");
    GroupCounts out;
    out.gl = 1;
    BigInt qM1 = big_pow(q, M + 1);
    for (unsigned i = 0; i <= M; ++i) out.gl *= qM1 - big_pow(q, i);
    out.pn = projective_points(q, BigInt(N + 1));
    return out;
}

BigInt veronese_dimension(unsigned N, unsigned D) {
    if (N < 1 || D < 1) throw MathError("veronese dimension needs N, D >= 1");
    return tau_count(N, D) - 1;
}

namespace {

BigInt matrix_order(const std::vector<std::vector<unsigned long>>& A, unsigned long p,
                    const BigInt& group_order);

std::vector<std::vector<unsigned long>> mat_mul(const std::vector<std::vector<unsigned long>>& a,
                                                const std::vector<std::vector<unsigned long>>& b,
                                                unsigned long p) {
    std::size_t n = a.size();
    std::vector<std::vector<unsigned long>> c(n, std::vector<unsigned long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (!a[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j)
                c[i][j] = fp::add(c[i][j], fp::mul(a[i][k], b[k][j], p), p);
        }
    return c;
}

bool mat_is_identity(const std::vector<std::vector<unsigned long>>& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (a[i][j] != (i == j ? 1UL : 0UL)) return false;
    return true;
}

std::vector<std::vector<unsigned long>> mat_pow(std::vector<std::vector<unsigned long>> a,
                                                BigInt e, unsigned long p) {
    std::size_t n = a.size();
    std::vector<std::vector<unsigned long>> r(n, std::vector<unsigned long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mat_mul(r, a, p);
        e >>= 1;
        if (e > 0) a = mat_mul(a, a, p);
    }
    return r;
}

void factorize(BigInt n, std::vector<std::pair<BigInt, unsigned>>& out) {
    for (BigInt d = 2; d * d <= n && d < 1000000; ++d) {
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.push_back({d, e});
        }
    }
    if (n > 1) {
        if (is_prime(n)) {
            out.push_back({n, 1});
        } else {
            // Pollard rho for the rare large composite cofactor
            BigInt c = n;
            std::function<void(BigInt)> split = [&](BigInt v) {
                if (v == 1) return;
                if (is_prime(v)) {
                    bool merged = false;
                    for (auto& [pp, ee] : out)
                        if (pp == v) {
                            ++ee;
                            merged = true;
                        }
                    if (!merged) out.push_back({v, 1});
                    return;
                }
                BigInt x = 2, y = 2, dgcd = 1, add = 1;
                while (dgcd == 1) {
                    x = (x * x + add) % v;
                    y = (y * y + add) % v;
                    y = (y * y + add) % v;
                    BigInt diff = x > y ? x - y : y - x;
                    if (diff == 0) {
                        ++add;
                        x = y = 2;
                        continue;
                    }
                    mpz_gcd(dgcd.get_mpz_t(), diff.get_mpz_t(), v.get_mpz_t());
                }
                split(dgcd);
                split(v / dgcd);
            };
            split(c);
        }
    }
}

BigInt matrix_order(const std::vector<std::vector<unsigned long>>& A, unsigned long p,
                    const BigInt& group_order) {
    std::vector<std::pair<BigInt, unsigned>> factors;
    factorize(group_order, factors);
    BigInt order = group_order;
    for (const auto& [q, e] : factors) {
        for (unsigned i = 0; i < e; ++i) {
            BigInt candidate = order / q;
            if (mat_is_identity(mat_pow(A, candidate, p)))
                order = candidate;
            else
                break;
        }
    }
    return order;
}

} // namespace

std::optional<BigInt> multiplier_order(const Morphism& psi, const std::vector<Scalar>& P,
                                       unsigned n_P) {
    const RingPtr& ring = psi.ring();
    const FieldPtr& field = ring->field();
    if (field->kind != FieldKind::Prime)
        throw MathError("multiplier order works over prime residue fields");
    if (P.size() != ring->nvars()) throw MathError("point arity mismatch");
    unsigned long p = field->p;

    Morphism g = psi.iterate(n_P);
    // verify periodicity: g(P) ~ P
    std::vector<unsigned long> gp;
    for (const auto& c : g.coords()) gp.push_back(c.evaluate(P).residue_value());
    long chart = -1;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (!P[i].is_zero()) {
            chart = static_cast<long>(i);
            break;
        }
    if (chart < 0) throw MathError("invalid projective point");
    unsigned long lambda = fp::mul(gp[static_cast<std::size_t>(chart)],
                                   fp::inv(P[static_cast<std::size_t>(chart)].residue_value(), p),
                                   p);
    if (lambda == 0) throw MathError("point maps into the coordinate hyperplane");
    for (std::size_t i = 0; i < P.size(); ++i)
        if (gp[i] != fp::mul(lambda, P[i].residue_value(), p))
            throw MathError("the point is not periodic with the given period");

    // Jacobian of the dehomogenized map at P in the chart
    std::size_t c0 = static_cast<std::size_t>(chart);
    std::vector<std::size_t> affine;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (i != c0) affine.push_back(i);
    std::size_t n = affine.size();
    std::vector<std::vector<unsigned long>> jac(n, std::vector<unsigned long>(n, 0));
    unsigned long inv_lambda = fp::inv(lambda, p);
    unsigned long inv_pc = fp::inv(P[c0].residue_value(), p);
    for (std::size_t a = 0; a < n; ++a) {   // output coordinate g_j / g_c0
        std::size_t j = affine[a];
        for (std::size_t b = 0; b < n; ++b) { // input variable
            std::size_t k = affine[b];
            unsigned long dj = g.coords()[j].derivative(k).evaluate(P).residue_value();
            unsigned long dc = g.coords()[c0].derivative(k).evaluate(P).residue_value();
            // d(g_j/g_c0) = (dj * g_c0 - g_j * dc) / g_c0^2, g_c0(P) = lambda * P_c0
            unsigned long gj = gp[j];
            unsigned long gc = gp[c0];
            unsigned long numer = fp::sub(fp::mul(dj, gc, p), fp::mul(gj, dc, p), p);
            unsigned long denom_inv = fp::mul(fp::mul(inv_lambda, inv_pc, p),
                                              fp::mul(inv_lambda, inv_pc, p), p);
            // also renormalize to the affine chart scale: multiply by P_c0
            jac[a][b] = fp::mul(fp::mul(numer, denom_inv, p), P[c0].residue_value(), p);
        }
    }

    // singular check via determinant over F_p
    {
        auto m = jac;
        unsigned long det = 1;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && m[piv][col] == 0) ++piv;
            if (piv == n) return std::nullopt;
            if (piv != col) {
                std::swap(m[piv], m[col]);
                det = fp::sub(0, det, p);
            }
            det = fp::mul(det, m[col][col], p);
            unsigned long inv = fp::inv(m[col][col], p);
            for (std::size_t r2 = col + 1; r2 < n; ++r2) {
                if (!m[r2][col]) continue;
                unsigned long f = fp::mul(m[r2][col], inv, p);
                for (std::size_t c2 = col; c2 < n; ++c2)
                    m[r2][c2] = fp::sub(m[r2][c2], fp::mul(f, m[col][c2], p), p);
            }
        }
        if (det == 0) return std::nullopt;
    }

    GroupCounts gc = group_counts(BigInt(p), static_cast<unsigned>(n) - 1, 1);
    return matrix_order(jac, p, gc.gl);
}

PeriodBoundReport period_bound(const PeriodBoundInput& input) {
    PeriodBoundReport rep;
    rep.input = input;
    EBound e = e_bound(input.p, input.v);
    rep.e_real = e.bound;
    rep.e_floor = e.floor_value;
    rep.M = veronese_dimension(input.N, input.D);
    if (!rep.M.fits_ulong_p()) throw MathError("Veronese dimension too large");
    GroupCounts gc = group_counts(BigInt(input.p), static_cast<unsigned>(rep.M.get_ui()),
                                  input.N);
    rep.gl = gc.gl;
    rep.pn = gc.pn;
    rep.used_r = input.r ? *input.r : rep.gl;
    if (!rep.e_floor.fits_ulong_p()) throw MathError("exponent bound too large");
    BigInt pe = big_pow(BigInt(input.p), rep.e_floor.get_ui());
    rep.bound = BigInt(input.s) * input.m * rep.used_r * pe;
    rep.coarse_cap = rep.pn * rep.gl * pe;
    return rep;
}

std::string PeriodBoundReport::serialize() const {
    std::ostringstream os;
    os << "p=" << input.p << " v=" << input.v << " s=" << input.s << " m=" << input.m << "\n";
    os << "N=" << input.N << " D=" << input.D << " t=" << input.t << " d=" << input.d << "\n";
    os << "e_real=" << format_real(e_real) << "\n";
    os << "e_floor=" << e_floor.get_str() << "\n";
    os << "M=" << M.get_str() << "\n";
    os << "GL_count=" << gl.get_str() << "\n";
    os << "PN_count=" << pn.get_str() << "\n";
    os << "r=" << used_r.get_str() << (input.r ? "" : " (defaulted to #GL)") << "\n";
    os << "bound=" << bound.get_str() << "\n";
    os << "coarse_cap=" << coarse_cap.get_str() << "\n";
    return os.str();
}

} // namespace subdyn
