// subdyn: exact arithmetic-dynamics toolkit for subvarieties of P^N.
//
// Every subcommand reads flags (and usually a JSON job file), runs one exact
// computation and prints a deterministic report. Exit codes: 0 success,
// 2 usage or parse error, 3 violated mathematical precondition, 4 exhausted
// resource budget.

#include <CLI11.hpp>

#include "subdyn/chow.hpp"
#include "subdyn/heights.hpp"
#include "subdyn/job.hpp"
#include "subdyn/periods.hpp"

#include <iostream>

using namespace subdyn;

namespace {

struct CommonFlags {
    std::string job_path;
    unsigned long prime = 0;
    unsigned long ramification = 1;
    unsigned iters = 5;
    unsigned max_steps = 32;
    unsigned threads = 1;
    unsigned long seed = 42;
    unsigned long budget = 1000000;
    bool example_literal = false;
};

GroebnerBudget budget_of(const CommonFlags& c) { return GroebnerBudget{c.budget}; }

JobFile need_job(const CommonFlags& c) {
    if (c.job_path.empty()) throw ParseError("a --job file is required for this command");
    return load_job(c.job_path);
}

const Morphism& need_morphism(const JobFile& job) {
    if (!job.morphism) throw ParseError("job file: this command needs a 'morphism' block");
    return *job.morphism;
}

const Subvariety& need_variety(const JobFile& job) {
    if (!job.variety) throw ParseError("job file: this command needs a 'variety' block");
    return *job.variety;
}

std::string basis_text(const std::vector<Polynomial>& basis) {
    std::string s = "V(";
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i) s += "; ";
        s += basis[i].str();
    }
    return s + ")";
}

// job + optional --prime: reduce both morphism and variety when asked
std::pair<Morphism, Subvariety> job_dynamics(const JobFile& job, unsigned long prime) {
    Morphism f = need_morphism(job);
    Subvariety X = need_variety(job);
    if (prime != 0 && job.field->kind == FieldKind::Rationals) {
        if (!good_reduction(f, prime))
            throw MathError("bad reduction at " + std::to_string(prime));
        return {reduce_mod_p(f, prime), reduce_mod_p(X, prime)};
    }
    if (prime != 0 && job.field->kind == FieldKind::Prime && job.field->p != prime)
        throw MathError("job is over GF(" + std::to_string(job.field->p) +
                        ") but --prime asked for " + std::to_string(prime));
    return {f, X};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dynamics of subvarieties of projective space"};
    app.require_subcommand(1);
    CommonFlags c;

    // shared flags registered on each subcommand
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--job", c.job_path, "JSON job file");
        sub->add_option("--prime", c.prime, "prime for reduction / residue computations");
        sub->add_option("--ramification", c.ramification, "ramification v(p)");
        sub->add_option("--iters", c.iters, "iteration count");
        sub->add_option("--max-steps", c.max_steps, "orbit step budget");
        sub->add_option("--threads", c.threads, "worker threads for searches");
        sub->add_option("--seed", c.seed, "seed for randomized reports");
        sub->add_option("--budget", c.budget, "Groebner pair budget");
        sub->add_flag("--example-literal", c.example_literal,
                      "constants reproduction mode (legacy hand-computation variant)");
    };

    auto* cmd_image = app.add_subcommand("image", "forward image of the job's variety");
    add_common(cmd_image);
    auto* cmd_preimage = app.add_subcommand("preimage", "preimage of the job's variety");
    add_common(cmd_preimage);
    auto* cmd_orbit = app.add_subcommand("orbit", "orbit with cycle detection");
    add_common(cmd_orbit);
    unsigned long orbit_degree_cap = 0;
    cmd_orbit->add_option("--degree-cap", orbit_degree_cap, "stop when the degree may exceed this");
    auto* cmd_chow = app.add_subcommand("chow", "Chow form of the job's variety");
    add_common(cmd_chow);
    auto* cmd_induced = app.add_subcommand("induced-map", "induced coefficient-space map");
    add_common(cmd_induced);
    unsigned opt_D = 1, opt_t = 1, opt_k = 1;
    cmd_induced->add_option("--D", opt_D, "source form degree");
    cmd_induced->add_option("--t", opt_t, "codimension (1 supported symbolically)");
    auto* cmd_disc = app.add_subcommand("discriminant", "degree-degeneration locus Z_k");
    add_common(cmd_disc);
    cmd_disc->add_option("--D", opt_D, "source form degree");
    cmd_disc->add_option("--k", opt_k, "derivative order of the displayed Z_k");
    auto* cmd_height = app.add_subcommand("height", "height of the job's variety");
    add_common(cmd_height);
    auto* cmd_canon = app.add_subcommand("canonical-height", "canonical height estimate");
    add_common(cmd_canon);
    auto* cmd_const = app.add_subcommand("constants", "explicit height-difference constant");
    add_common(cmd_const);
    unsigned const_N = 2, const_d = 2, const_D = 1;
    double const_hf = 0.0;
    cmd_const->add_option("--N", const_N, "ambient dimension");
    cmd_const->add_option("--d", const_d, "morphism degree");
    cmd_const->add_option("--D", const_D, "hypersurface degree");
    cmd_const->add_option("--hf", const_hf, "height of the morphism (natural log)");
    auto* cmd_diff = app.add_subcommand("diff-bound", "height vs canonical height bound");
    add_common(cmd_diff);
    double diff_C = -1.0;
    unsigned diff_D = 1, diff_d = 2, diff_N = 2, diff_t = 1;
    double diff_hf = 0.0;
    cmd_diff->add_option("--C", diff_C, "constant C (computed from --hf when absent)");
    cmd_diff->add_option("--D", diff_D, "subvariety degree");
    cmd_diff->add_option("--d", diff_d, "morphism degree");
    cmd_diff->add_option("--N", diff_N, "ambient dimension");
    cmd_diff->add_option("--t", diff_t, "codimension");
    cmd_diff->add_option("--hf", diff_hf, "morphism height for deriving C");
    auto* cmd_good = app.add_subcommand("good-reduction", "good reduction test at a prime");
    add_common(cmd_good);
    auto* cmd_resper = app.add_subcommand("residue-period", "period of the reduction mod p");
    add_common(cmd_resper);
    auto* cmd_pbound = app.add_subcommand("period-bound", "good-reduction period bound");
    add_common(cmd_pbound);
    PeriodBoundInput pbi;
    cmd_pbound->add_option("--m", pbi.m, "period over the residue field");
    unsigned long pb_r = 0;
    cmd_pbound->add_option("--r", pb_r, "multiplier order (defaults to the #GL cap)");
    cmd_pbound->add_option("--s", pbi.s, "extension exponent");
    cmd_pbound->add_option("--N", pbi.N, "ambient dimension");
    cmd_pbound->add_option("--D", pbi.D, "subvariety degree");
    cmd_pbound->add_option("--t", pbi.t, "codimension");
    cmd_pbound->add_option("--d", pbi.d, "morphism degree");
    auto* cmd_search = app.add_subcommand("search-preperiodic", "enumerate preperiodic hypersurfaces");
    add_common(cmd_search);
    unsigned search_Dmax = 1, search_cb = 1;
    cmd_search->add_option("--Dmax", search_Dmax, "maximal hypersurface degree");
    cmd_search->add_option("--coeff-bound", search_cb, "coefficient box bound");
    auto* cmd_counts = app.add_subcommand("counts", "residue-field counting quantities");
    add_common(cmd_counts);
    unsigned long counts_q = 2;
    unsigned counts_N = 2, counts_M = 0, counts_D = 1, counts_t = 1;
    cmd_counts->add_option("--q", counts_q, "residue field size (prime power)");
    cmd_counts->add_option("--N", counts_N, "ambient dimension");
    cmd_counts->add_option("--M", counts_M, "GL dimension parameter (default: Veronese M)");
    cmd_counts->add_option("--D", counts_D, "degree bound for the Chow-form count");
    cmd_counts->add_option("--t", counts_t, "codimension for the Chow-form count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_image->parsed()) {
            JobFile job = need_job(c);
            auto [f, X] = job_dynamics(job, c.prime);
            Subvariety Y = forward_image(f, X, budget_of(c));
            std::cout << basis_text(Y.canonical_basis()) << "\n";
        } else if (cmd_preimage->parsed()) {
            JobFile job = need_job(c);
            auto [f, X] = job_dynamics(job, c.prime);
            Subvariety Y = preimage(f, X);
            std::cout << "raw=" << basis_text(Y.canonical_basis()) << "\n";
            if (Y.gens().size() == 1) {
                Subvariety R = reduced_preimage(f, X);
                std::cout << "reduced=" << basis_text(R.canonical_basis()) << "\n";
            }
        } else if (cmd_orbit->parsed()) {
            JobFile job = need_job(c);
            auto [f, X] = job_dynamics(job, c.prime);
            OrbitReport rep =
                iterate_orbit(f, X, c.max_steps, BigInt(orbit_degree_cap), budget_of(c));
            std::cout << rep.serialize();
        } else if (cmd_chow->parsed()) {
            JobFile job = need_job(c);
            const Subvariety& X = need_variety(job);
            ChowForm ch = chow_form(X, budget_of(c));
            const char* kind = ch.kind == ChowForm::Kind::Hypersurface ? "hypersurface"
                               : ch.kind == ChowForm::Kind::Point      ? "point"
                                                                       : "general";
            std::cout << "kind=" << kind << " dim=" << ch.dim_k
                      << " degree=" << ch.degree_D.get_str() << "\n";
            std::cout << "chow_form=" << ch.form.str() << "\n";
        } else if (cmd_induced->parsed()) {
            JobFile job = need_job(c);
            const Morphism& f = need_morphism(job);
            InducedMap phi = induced_chow_map(f, opt_D, opt_t, {}, budget_of(c));
            std::cout << "source_dim=" << phi.source_dim << " target_dim=" << phi.target_dim
                      << " degree=" << phi.algebraic_degree
                      << " path=" << (phi.used_groebner_fallback ? "groebner" : "resultant")
                      << "\n";
            for (std::size_t i = 0; i < phi.coords.size(); ++i)
                std::cout << "coord[" << i << "]=" << phi.coords[i].str() << "\n";
        } else if (cmd_disc->parsed()) {
            JobFile job = need_job(c);
            const Morphism& f = need_morphism(job);
            InducedMap phi = induced_chow_map(f, opt_D, 1, {}, budget_of(c));
            // rebuild the symbolic image form and take Z_k
            FieldPtr fn = FieldDesc::function(phi.coeff_ring->vars(), phi.coeff_ring->field());
            RingPtr main = PolyRing::make(fn, phi.main_vars, MonomialOrder::GrevLex);
            auto mons = monomials_of_degree(main, phi.target_form_degree);
            Polynomial F(main);
            for (std::size_t i = 0; i < mons.size(); ++i) {
                if (phi.coords[i].is_zero()) continue;
                std::vector<long> idmap(phi.coeff_ring->nvars());
                for (std::size_t k2 = 0; k2 < idmap.size(); ++k2)
                    idmap[k2] = static_cast<long>(k2);
                Scalar cscal = Scalar::from_fraction(
                    fn, phi.coords[i].map_ring(fn->param_ring, idmap),
                    Polynomial::constant(fn->param_ring, 1));
                F = F + Polynomial::monomial(main, mons[i], cscal);
            }
            Scalar Z = discriminant_locus(F, opt_k);
            Polynomial Zp = Z.frac().num;
            std::cout << "Z_" << opt_k << "=" << Zp.normalized().str() << "\n";
            ComponentSplit split = extract_components(Zp);
            std::cout << "components=";
            bool first = true;
            for (const auto& [mpoly, mult] : split.monomials) {
                std::cout << (first ? "" : "; ") << "V(" << mpoly.str() << ")";
                first = false;
            }
            for (const auto& [lpoly, mult] : split.linears) {
                std::cout << (first ? "" : "; ") << "V(" << lpoly.str() << ")";
                first = false;
            }
            std::cout << "\n";
            if (!split.remainder.empty()) {
                std::cout << "remainder=";
                for (std::size_t i = 0; i < split.remainder.size(); ++i)
                    std::cout << (i ? "; " : "") << split.remainder[i].first.str();
                std::cout << "\n";
            }
        } else if (cmd_height->parsed()) {
            JobFile job = need_job(c);
            std::cout << "h=" << format_real(variety_height(need_variety(job), budget_of(c)))
                      << " precision_bits=" << real_precision_bits() << "\n";
        } else if (cmd_canon->parsed()) {
            JobFile job = need_job(c);
            const Morphism& f = need_morphism(job);
            HeightEstimate est = canonical_height(f, need_variety(job), c.iters, budget_of(c));
            std::cout << "value=" << format_real(est.value)
                      << " error_bound=" << format_real(est.error_bound)
                      << " iterations=" << est.iterations << " degrees=";
            for (std::size_t i = 0; i < est.degree_sequence.size(); ++i)
                std::cout << (i ? "," : "") << est.degree_sequence[i].get_str();
            std::cout << " precision_bits=" << real_precision_bits() << "\n";
        } else if (cmd_const->parsed()) {
            ConstantReport rep =
                height_constant_C(const_N, const_d, const_D, Real(const_hf), c.example_literal);
            std::cout << rep.serialize();
        } else if (cmd_diff->parsed()) {
            Real C;
            if (diff_C >= 0) {
                C = Real(diff_C);
            } else {
                C = height_constant_C(diff_N, diff_d, diff_D, Real(diff_hf), c.example_literal)
                        .combined;
            }
            std::cout << "bound="
                      << format_real(height_difference_bound(C, diff_D, diff_d, diff_N, diff_t))
                      << "\n";
        } else if (cmd_good->parsed()) {
            JobFile job = need_job(c);
            if (c.prime == 0) throw ParseError("good-reduction needs --prime");
            bool good = good_reduction(need_morphism(job), c.prime);
            std::cout << "prime=" << c.prime << " good=" << (good ? "true" : "false") << "\n";
        } else if (cmd_resper->parsed()) {
            JobFile job = need_job(c);
            if (c.prime == 0) throw ParseError("residue-period needs --prime");
            ResiduePeriodReport rep = residue_period(need_morphism(job), need_variety(job),
                                                     c.prime, c.max_steps, budget_of(c));
            std::cout << "m=" << rep.m << " tail=" << rep.tail
                      << " degrees_match=" << (rep.degrees_match ? "true" : "false")
                      << " degrees=";
            for (std::size_t i = 0; i < rep.degrees_mod_p.size(); ++i)
                std::cout << (i ? "," : "") << rep.degrees_mod_p[i].get_str();
            std::cout << "\n";
        } else if (cmd_pbound->parsed()) {
            if (c.prime != 0) pbi.p = c.prime;
            pbi.v = c.ramification;
            if (pb_r != 0) pbi.r = BigInt(pb_r);
            std::cout << period_bound(pbi).serialize();
        } else if (cmd_search->parsed()) {
            JobFile job = need_job(c);
            const Morphism& f = need_morphism(job);
            PreperiodicSearchResult res = preperiodic_search(
                f, search_Dmax, search_cb, c.iters, c.threads, 2000000, 0, budget_of(c));
            std::cout << "candidates=" << res.candidates << " hits=" << res.hits.size() << "\n";
            for (const auto& hit : res.hits)
                std::cout << "variety=V(" << hit.generator << ") tail=" << hit.orbit.tail
                          << " period=" << *hit.orbit.period << "\n";
        } else if (cmd_counts->parsed()) {
            BigInt q(counts_q);
            unsigned M = counts_M;
            if (M == 0) {
                BigInt Mv = veronese_dimension(counts_N, counts_D);
                if (!Mv.fits_ulong_p()) throw MathError("Veronese dimension too large");
                M = static_cast<unsigned>(Mv.get_ui());
            }
            GroupCounts gc = group_counts(q, M, counts_N);
            std::cout << "q=" << counts_q << " N=" << counts_N << " M=" << M << "\n";
            std::cout << "GL_count=" << gc.gl.get_str() << "\n";
            std::cout << "PN_count=" << gc.pn.get_str() << "\n";
            std::cout << "veronese_M=" << veronese_dimension(counts_N, counts_D).get_str()
                      << "\n";
            std::cout << "chow_count_bound="
                      << lemma_m_count_bound(q, counts_N, counts_t, counts_D).get_str() << "\n";
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
