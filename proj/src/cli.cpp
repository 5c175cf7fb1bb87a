#include "siegel/cli.hpp"

#include "siegel/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace siegel {

namespace {

// exhaustive even positive definite Gram matrices with entries bounded; the
// rank 1-2 inventory used by the exhaustive verification sweeps
std::vector<GramLattice> even_posdef_inventory(int rank, long bound) {
    std::vector<GramLattice> out;
    if (rank == 0) {
        out.emplace_back(IntMat(0, 0));
        return out;
    }
    if (rank == 1) {
        for (long a = 2; a <= bound; a += 2) {
            IntMat g(1, 1);
            g.at(0, 0) = a;
            out.emplace_back(g);
        }
        return out;
    }
    if (rank == 2) {
        for (long a = 2; a <= bound; a += 2)
            for (long c = a; c <= bound; c += 2)
                for (long b = 0; (long)b * b < a * c && b <= bound; ++b) {
                    IntMat g(2, 2);
                    g.at(0, 0) = a;
                    g.at(1, 1) = c;
                    g.at(0, 1) = g.at(1, 0) = b;
                    out.emplace_back(g);
                }
        return out;
    }
    throw std::invalid_argument("exhaustive inventory supports rank <= 2");
}

GramLattice random_even_posdef(int rank, std::mt19937_64& rng) {
    if (rank == 0) return GramLattice(IntMat(0, 0));
    std::uniform_int_distribution<int> off(-1, 1), diag(1, 2);
    while (true) {
        IntMat r(rank, rank);
        for (int i = 0; i < rank; ++i) {
            r.at(i, i) = diag(rng);
            for (int j = 0; j < i; ++j) r.at(i, j) = off(rng);
        }
        IntMat t = r.transpose() * r;
        t = t + t;  // 2 R^t R: even and positive definite
        if (is_positive_definite(t)) return GramLattice(t);
    }
}

void merge(VerifyReport& into, const VerifyReport& part, const std::string& prefix) {
    for (CheckRecord rec : part.checks) {
        rec.name = prefix + rec.name;
        into.checks.push_back(std::move(rec));
    }
}

struct VerifyArgs {
    std::string suite;
    std::vector<long> primes;
    std::vector<long> levels{1, 2, 6, 30};
    int n = 0;  // 0 = suite default
    std::vector<int> js;
    int rank = 0;
    RunConfig cfg;
};

VerifyReport run_verify(const VerifyArgs& a) {
    VerifyReport report;
    report.suite = a.suite;
    ExecPolicy pol = a.cfg.serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
    std::vector<long> primes = a.primes.empty() ? a.cfg.primes : a.primes;

    if (a.suite == "intertwine-tp") {
        int rmax = a.rank ? a.rank : a.cfg.max_rank;
        int rmin = a.rank ? a.rank : 1;
        for (long p : primes)
            for (int r = rmin; r <= rmax; ++r)
                for (const auto& lp : even_posdef_inventory(r, a.cfg.entry_bound)) {
                    std::ostringstream tag;
                    tag << "p=" << p << " L'=" << lp.gram().to_string() << " : ";
                    merge(report, verify_intertwine_tp(lp, p, pol, a.cfg.budget), tag.str());
                }
    } else if (a.suite == "intertwine-tj") {
        int rank = a.rank ? a.rank : a.cfg.max_rank;
        std::mt19937_64 rng(a.cfg.seed);
        std::vector<GramLattice> insts;
        for (int i = 0; i < a.cfg.instances; ++i) insts.push_back(random_even_posdef(rank, rng));
        for (long p : primes) {
            std::vector<int> js = a.js;
            if (js.empty())
                for (int j = 1; j <= rank + 1; ++j) js.push_back(j);
            for (int j : js)
                for (const auto& lp : insts) {
                    std::ostringstream tag;
                    tag << "p=" << p << " j=" << j << " L'=" << lp.gram().to_string() << " : ";
                    merge(report, verify_intertwine_ttilde(lp, p, j, pol, a.cfg.budget),
                          tag.str());
                }
        }
    } else if (a.suite == "projection-classes") {
        int rmax = a.rank ? a.rank : a.cfg.max_rank;
        int rmin = a.rank ? a.rank : 1;
        for (long p : primes)
            for (int r = rmin; r <= rmax; ++r)
                for (const auto& lp : even_posdef_inventory(r, a.cfg.entry_bound)) {
                    std::ostringstream tag;
                    tag << "p=" << p << " L'=" << lp.gram().to_string() << " : ";
                    merge(report, verify_projection_classes(lp, p, pol, a.cfg.budget), tag.str());
                }
    } else if (a.suite == "counts") {
        int n = a.n ? a.n : 2;
        IntMat g = IntMat::identity(n).scaled(2);
        for (long p : primes) {
            std::ostringstream tag;
            tag << "p=" << p << " n=" << n << " : ";
            merge(report, verify_counts(GramLattice(g), p, 6, pol, a.cfg.budget), tag.str());
        }
    } else if (a.suite == "coeff-derivation") {
        int n = a.n ? a.n : 5;
        for (int d = 1; d <= n; ++d)
            merge(report, derive_theorem1_from_proposition(d), "n=" + std::to_string(d) + " : ");
    } else if (a.suite == "multiplicity") {
        int n = a.n ? a.n : 2;
        for (long N : a.levels)
            for (int s = 0; s < n; ++s) {
                std::ostringstream tag;
                tag << "N=" << N << " n=" << n << " : ";
                merge(report, verify_multiplicity(N, n, s), tag.str());
            }
    } else if (a.suite == "reps") {
        int n = a.n ? a.n : 2;
        for (long N : a.levels) {
            std::ostringstream tag;
            tag << "N=" << N << " n=" << n << " : ";
            merge(report, verify_reps(N, n, a.cfg.seed, pol), tag.str());
        }
    } else {
        throw CLI::ValidationError("verify", "unknown suite: " + a.suite);
    }
    return report;
}

SymbolBinding parse_chi_value(const std::string& text) {
    if (text.rfind("e(", 0) == 0 && text.back() == ')') {
        std::string body = text.substr(2, text.size() - 3);
        auto slash = body.find('/');
        if (slash == std::string::npos)
            throw CLI::ValidationError("--chi", "root of unity must look like e(1/4)");
        long num = std::stol(body.substr(0, slash));
        long den = std::stol(body.substr(slash + 1));
        return SymbolBinding::of(RootOfUnity(num, den));
    }
    auto slash = text.find('/');
    if (slash == std::string::npos) return SymbolBinding::of(Rational(std::stol(text)));
    return SymbolBinding::of(
        Rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1))));
}

std::vector<long> parse_tuple(const std::string& text) {
    std::vector<long> out;
    if (text.empty() || text == "-") return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
    return out;
}

Json eigenvalue_output(ScalarContext& ctx, const LaurentScalar& expr, long p, long N, int r,
                       bool have_k, const EigenvalueBindings& b) {
    Json out{{"schema", kSchemaTag}};
    out["expr"] = laurent_to_json(expr, ctx.reg);
    out["expr_str"] = expr.to_string(ctx.reg);
    if (!have_k) return out;
    auto exact = evaluate_eigenvalue_rational(ctx, expr, p, N, b);
    if (exact) {
        out["value"] = to_string(*exact);
    } else {
        auto z = evaluate_eigenvalue_complex(ctx, expr, p, N, b);
        out["value"] = Json{{"re", z.real()}, {"im", z.imag()}};
    }
    return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Hecke operators, cusp atlas and Klingen-Eisenstein eigenvalues "
                 "for Siegel modular forms of squarefree level"};
    app.name("siegel-hecke");
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (budgets, primes, seed)");

    // verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    VerifyArgs va;
    verify->add_option("suite", va.suite,
                       "one of: intertwine-tp intertwine-tj projection-classes counts "
                       "coeff-derivation multiplicity reps")
        ->required();
    verify->add_option("--p", va.primes, "primes to use");
    verify->add_option("--N", va.levels, "squarefree levels (multiplicity/reps)");
    verify->add_option("--n", va.n, "degree (suite dependent)");
    verify->add_option("--j", va.js, "operator indices");
    verify->add_option("--rank", va.rank, "rank of the base lattices");
    int instances = -1;
    verify->add_option("--instances", instances, "number of random instances");
    std::uint64_t seed = 0;
    bool have_seed = false;
    verify->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
        have_seed = true;
    });
    std::uint64_t budget = 0;
    verify->add_option("--budget", budget, "enumeration budget override");
    bool serial = false;
    verify->add_flag("--serial", serial, "run the serial reference path");

    // hecke ---------------------------------------------------------------
    auto* hecke = app.add_subcommand("hecke", "apply a Hecke operator to a coefficient table");
    std::vector<std::string> table_paths;
    std::string op = "tp", out_path;
    long hp = 2;
    int hj = 1;
    hecke->add_option("--table", table_paths, "coefficient table JSON (first = primary degree)")
        ->required();
    hecke->add_option("--op", op, "tp | ttilde | tj")->check(CLI::IsMember({"tp", "ttilde", "tj"}));
    hecke->add_option("--p", hp, "prime");
    hecke->add_option("--j", hj, "operator index for ttilde/tj");
    hecke->add_option("--out", out_path, "output file (default stdout)");

    // cusps ---------------------------------------------------------------
    auto* cusps = app.add_subcommand("cusps", "cusp atlas of Gamma_0(N)\\H_n*");
    long cN = 1;
    int cn = 2, cr = 1;
    std::string cformat = "json", ctuple;
    auto* clist = cusps->add_subcommand("list", "list r-cusps");
    clist->add_option("--N", cN, "squarefree level")->required();
    clist->add_option("--n", cn, "degree")->required();
    clist->add_option("--r", cr, "cusp level")->required();
    auto* cinc = cusps->add_subcommand("incidence", "lies-on incidence poset");
    cinc->add_option("--N", cN, "squarefree level")->required();
    cinc->add_option("--n", cn, "degree")->required();
    cinc->add_option("--format", cformat, "dot | json")->check(CLI::IsMember({"dot", "json"}));
    auto* crep = cusps->add_subcommand("rep", "standard representative matrix");
    crep->add_option("--N", cN, "squarefree level")->required();
    crep->add_option("--n", cn, "degree")->required();
    crep->add_option("--tuple", ctuple, "comma separated parts (l_{n-r},...,l_1)")->required();

    // eigenvalue ------------------------------------------------------------
    auto* eig = app.add_subcommand("eigenvalue", "Klingen-Eisenstein Hecke eigenvalues");
    long eN = 1, ep = 2;
    int en = 2, er = 1, ej = 1;
    long ek = -1;
    std::string ecusp, echi, elambda, elambdas;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", en, "degree")->required();
        sub->add_option("--r", er, "cusp level of the underlying cusp form")->required();
        sub->add_option("--N", eN, "squarefree level")->required();
        sub->add_option("--p", ep, "prime (must not divide N)");
        sub->add_option("--k", ek, "weight (enables numeric evaluation)");
        sub->add_option("--cusp", ecusp, "cusp tuple parts, e.g. 2,3 (default all ones)");
        sub->add_option("--chi", echi, "character values chi_q(p), e.g. 2:-1,3:e(1/3)");
    };
    auto* etp = eig->add_subcommand("tp", "eigenvalue under T(p)");
    add_common(etp);
    etp->add_option("--lambda", elambda, "base eigenvalue value for L");
    auto* etj = eig->add_subcommand("tj", "eigenvalue under T_j(p^2)");
    add_common(etj);
    etj->add_option("--j", ej, "operator index")->required();
    etj->add_option("--lambdas", elambdas, "base eigenvalues, e.g. 0:512,1:-1048512");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        RunConfig cfg = load_config(config_path);

        if (*verify) {
            va.cfg = cfg;
            if (instances >= 0) va.cfg.instances = instances;
            if (have_seed) va.cfg.seed = seed;
            if (budget) va.cfg.budget = budget;
            va.cfg.serial = va.cfg.serial || serial;
            VerifyReport rep = run_verify(va);
            out << report_to_json(rep).dump(2) << "\n";
            return rep.all_pass() ? 0 : 1;
        }

        if (*hecke) {
            ScalarContext ctx;
            TableSet tables;
            int primary_degree = -1;
            for (const auto& path : table_paths) {
                std::ifstream in(path);
                if (!in) throw CLI::ValidationError("--table", "not readable: " + path);
                CoeffTable t = table_from_json(Json::parse(in), ctx.reg);
                if (primary_degree < 0) primary_degree = t.degree;
                tables.by_degree[t.degree] = std::move(t);
            }
            const CoeffTable& primary = tables.by_degree.at(primary_degree);
            CoeffTable result;
            result.degree = primary_degree;
            bool warned = false;
            for (const auto& [gram, unused] : primary.entries) {
                GramLattice lam(gram);
                ApplyResult r;
                if (op == "tp") r = apply_tp(tables, lam, hp, ctx, cfg.budget);
                else if (op == "ttilde") r = apply_ttilde_j(tables, lam, hp, hj, ctx, cfg.budget);
                else r = apply_tj(tables, lam, hp, hj, ctx, cfg.budget);
                warned = warned || r.missing_degree;
                result.entries.emplace_back(gram, r.value);
            }
            Json j = table_to_json(result, ctx.reg);
            j["op"] = op;
            j["p"] = hp;
            if (op != "tp") j["j"] = hj;
            if (warned) j["warning"] = "lookup hit a degree with no table supplied; treated as 0";
            if (out_path.empty()) {
                out << j.dump(2) << "\n";
            } else {
                std::ofstream of(out_path);
                of << j.dump(2) << "\n";
            }
            return 0;
        }

        if (*cusps) {
            if (*clist) {
                Json rows = Json::array();
                for (const auto& c : enumerate_cusps(cN, cn, cr)) {
                    Json parts = Json::array();
                    for (long v : c.parts()) parts.push_back(v);
                    rows.push_back(Json{{"tuple", parts}, {"label", c.to_string()}});
                }
                out << Json{{"schema", kSchemaTag}, {"N", cN}, {"n", cn}, {"r", cr},
                            {"cusps", rows}}
                           .dump(2)
                    << "\n";
                return 0;
            }
            if (*cinc) {
                CuspIncidence inc = cusp_incidence(cN, cn);
                if (cformat == "dot") out << incidence_to_dot(inc);
                else out << incidence_to_json(inc).dump(2) << "\n";
                return 0;
            }
            if (*crep) {
                std::vector<long> parts = parse_tuple(ctuple);
                CuspTuple c(cN, cn, parts);
                SymplecticMatrix rep = standard_rep(c);
                Json rows = Json::array();
                for (int i = 0; i < rep.mat.rows(); ++i) {
                    Json row = Json::array();
                    for (int j2 = 0; j2 < rep.mat.cols(); ++j2)
                        row.push_back(rep.mat.at(i, j2).str());
                    rows.push_back(row);
                }
                out << Json{{"schema", kSchemaTag},
                            {"N", cN},
                            {"n", cn},
                            {"r", c.level()},
                            {"tuple", c.to_string()},
                            {"matrix", rows},
                            {"mu", rep.mu.str()},
                            {"symplectic", rep.is_symplectic()},
                            {"rank_profile_ok", rank_profile_matches(c, rep)}}
                           .dump(2)
                    << "\n";
                return 0;
            }
            err << "usage error: cusps needs one of list/incidence/rep\n";
            return 2;
        }

        if (*eig) {
            if (!*etp && !*etj) {
                err << "usage error: eigenvalue needs tp or tj\n";
                return 2;
            }
            if (er < 0 || er >= en) throw CLI::ValidationError("--r", "need 0 <= r < n");
            std::vector<long> parts = parse_tuple(ecusp);
            if (parts.empty()) parts.assign((size_t)(en - er), 1);
            CuspTuple cusp(eN, en, parts);
            if (cusp.level() != er) throw CLI::ValidationError("--cusp", "tuple has wrong arity");
            CharacterProduct chi(eN);
            ScalarContext ctx;
            EigenvalueBindings b;
            b.k = ek;
            if (!echi.empty()) {
                std::stringstream ss(echi);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    auto colon = item.find(':');
                    if (colon == std::string::npos)
                        throw CLI::ValidationError("--chi", "expected q:value pairs");
                    long q = std::stol(item.substr(0, colon));
                    b.chi_values[q] = parse_chi_value(item.substr(colon + 1));
                }
            }
            LaurentScalar expr;
            if (*etp) {
                expr = lift_eigenvalue_tp(ctx, ep, en, er, cusp, chi);
                if (!elambda.empty()) {
                    b.lambda_tp = Rational(Integer(elambda));
                } else if (ek >= 0 && er > 0) {
                    throw CLI::ValidationError("--lambda",
                                               "numeric evaluation needs the base eigenvalue L");
                }
            } else {
                expr = lift_eigenvalue_tj(ctx, ep, en, er, ej, cusp, chi);
                if (!elambdas.empty()) {
                    std::stringstream ss(elambdas);
                    std::string item;
                    while (std::getline(ss, item, ',')) {
                        auto colon = item.find(':');
                        if (colon == std::string::npos)
                            throw CLI::ValidationError("--lambdas", "expected i:value pairs");
                        b.lambda_tj[std::stoi(item.substr(0, colon))] =
                            Rational(Integer(item.substr(colon + 1)));
                    }
                }
                if (ek >= 0) {
                    std::vector<int> need = required_base_indices(ctx, expr, er);
                    std::vector<int> missing;
                    for (int i : need)
                        if (!b.lambda_tj.count(i)) missing.push_back(i);
                    if (!missing.empty()) {
                        std::ostringstream msg;
                        msg << "missing base eigenvalues for indices";
                        for (int i : missing) msg << " " << i;
                        throw CLI::ValidationError("--lambdas", msg.str());
                    }
                }
            }
            out << eigenvalue_output(ctx, expr, ep, eN, er, ek >= 0, b).dump(2) << "\n";
            return 0;
        }

        err << "usage error: no subcommand\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const CLI::Error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace siegel
