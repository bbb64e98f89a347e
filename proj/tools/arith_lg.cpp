// arith-lg: command-line front end. Every subcommand reads one JSON input file
// (except `acceptance`), prints a text summary or, with --json, a JSON report,
// and exits 0 when all requested checks pass, 1 when a check fails, 2 on bad
// input and 3 when an enumeration budget runs out.

#include "arithlg/acceptance.hpp"
#include "arithlg/connalg.hpp"
#include "arithlg/expsum.hpp"
#include "arithlg/frobdata.hpp"
#include "arithlg/json_io.hpp"
#include "arithlg/laurent.hpp"
#include "arithlg/polytope.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

using namespace arithlg;

namespace {

struct Common {
    bool json = false;
    unsigned threads = 1;
};

struct Result {
    Json report;
    std::string text;
    bool ok = true;
};

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

std::uint64_t budget_for(const Problem& P) {
    const char* env = std::getenv("ARITH_LG_BUDGET");
    if (env == nullptr) return P.budget;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*env == '\0' || *end != '\0' || v == 0)
        throw Error(ErrorCode::InvalidInput, std::string("ARITH_LG_BUDGET must be a positive integer, got \"") + env + "\"");
    return v;
}

SumOptions sum_options(const Problem& P, const Common& c) {
    SumOptions s;
    s.budget = budget_for(P);
    s.threads = c.threads;
    return s;
}

/// Parameter values in F_{q^over}; missing --x means x = 0.
struct Point {
    FieldSpec field;
    FqElem tau;
    std::vector<FqElem> x;
};

Point parse_point(const Problem& P, unsigned over, const std::string& tau, const std::vector<std::string>& xs) {
    const FieldSpec E = degree_k_field(P.field, over);
    Point pt{E, parse_element(E, tau, "--tau"), {}};
    if (!xs.empty() && xs.size() != P.deformation.m())
        throw JsonInputError("--x", "expected one value per deformation (" + std::to_string(P.deformation.m()) + ")");
    for (std::size_t i = 0; i < P.deformation.m(); ++i)
        pt.x.push_back(xs.empty() ? E.zero() : parse_element(E, xs[i], "--x[" + std::to_string(i) + "]"));
    return pt;
}

std::string point_string(const LatticePoint& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

Result analyze_polytope(const std::string& file) {
    const Problem P = parse_problem(read_json_file(file));
    const Polytope delta = newton_polyhedron_of(P.deformation.base);
    Result r{to_json(delta), {}, true};
    std::ostringstream os;
    os << "dimension " << delta.dim() << " in Z^" << delta.ambient_dim() << (delta.degenerate() ? " (degenerate)" : "")
       << "\nvertices:";
    for (const auto& v : delta.vertices()) os << ' ' << point_string(v);
    os << "\nfacets: " << delta.facets().size() << ", faces: " << delta.faces().size() << '\n';
    if (!delta.degenerate()) {
        os << "convenient: " << (is_convenient(delta) ? "yes" : "no") << "\nnormalized volume: " << normalized_volume(delta)
           << '\n';
    }
    r.text = os.str();
    return r;
}

Result check_nondegenerate(const std::string& file, const Common& c, const std::vector<std::string>& xs, unsigned K) {
    const Problem P = parse_problem(read_json_file(file));
    const Point pt = parse_point(P, 1, "1", xs);
    const LaurentPoly F = specialize(P.deformation, pt.x);
    const Polytope delta = newton_polyhedron_of(F);
    delta.require_full_dimensional();
    const std::uint64_t budget = budget_for(P);
    if (K == 0) K = default_nondegeneracy_depth(P.field, F.n(), std::min<std::uint64_t>(budget, 10'000'000));
    const NondegeneracyVerdict v = check_nondegenerate(F, delta, K, budget, c.threads);
    const bool ok = v.kind == NondegeneracyVerdict::Kind::VerifiedUpTo;
    std::ostringstream os;
    if (ok) {
        os << "nondegenerate on all " << v.faces.size() << " faces avoiding the origin"
           << (v.conclusive ? " (conclusive)" : ", searched up to degree " + std::to_string(v.K)) << '\n';
    } else {
        os << "degenerate: common torus zero over degree " << v.k << " on the face spanned by";
        for (const auto& w : v.face->points) os << ' ' << point_string(w);
        os << '\n';
    }
    return {to_json(v), os.str(), ok};
}

Result expsum(const std::string& file, const Common& c, unsigned k, unsigned over, const std::string& tau,
              const std::vector<std::string>& xs) {
    const Problem P = parse_problem(read_json_file(file));
    const Point pt = parse_point(P, over, tau, xs);
    const SumOptions opts = sum_options(P, c);
    const CycloNum S = family_sum(P.deformation, k, pt.tau, pt.x, opts);

    const FieldSpec Ek = degree_k_field(P.field, k);
    std::vector<FqElem> xk;
    for (const auto& v : pt.x) xk.push_back(embed(v, Ek));
    const CycloNum G = gkz_sum(P.table, phi_map(P.deformation, P.table, embed(pt.tau, Ek), xk), opts);

    const double bound = purity_bound(P.deformation, k);
    double worst = 0;
    Json emb = Json::array();
    for (auto a : embedding_indices(S.p())) {
        const auto z = embed_complex(S, a);
        worst = std::max(worst, std::abs(z));
        emb.push_back(Json{{"index", a}, {"re", format_double(z.real())}, {"im", format_double(z.imag())}});
    }
    const bool bound_ok = worst <= bound * (1 + P.tolerance);
    Json j{{"exact", to_json(S)},
           {"text", S.to_string()},
           {"embeddings", emb},
           {"max_abs", format_double(worst)},
           {"bound", format_double(bound)},
           {"bound_ok", bound_ok},
           {"gkz", to_json(G)},
           {"composition_ok", G == S}};
    std::ostringstream os;
    os << "S = " << S.to_string() << "\nmax |S| = " << format_double(worst) << ", bound " << format_double(bound) << ": "
       << verdict(bound_ok) << "\nGKZ sum at phi(tau, x): " << verdict(G == S) << '\n';
    return {j, os.str(), bound_ok && G == S};
}

Result frobenius(const std::string& file, const Common& c, unsigned over, const std::string& tau,
                 const std::vector<std::string>& xs) {
    const Problem P = parse_problem(read_json_file(file));
    const Point pt = parse_point(P, over, tau, xs);
    FrobeniusOptions opts;
    opts.sums = sum_options(P, c);
    opts.max_rank = P.max_rank;
    opts.tolerance = P.tolerance;
    const FrobeniusReport rep = frobenius_report(P.deformation, pt.x, pt.tau, opts);
    std::ostringstream os;
    os << "rank " << rep.rank << ", q = " << rep.q << ", n = " << rep.n << "\nP(T) = " << rep.char_poly.to_string() << '\n';
    for (std::size_t i = 0; i < rep.power_sums.size(); ++i) os << "p_" << i + 1 << " = " << rep.power_sums[i].to_string() << '\n';
    os << "purity: " << verdict(rep.purity_ok) << " (max relative deviation " << format_double(rep.max_purity_deviation)
       << ")\ndeterminant: " << verdict(rep.determinant_ok) << "\nduality: " << verdict(rep.duality_ok) << '\n';
    for (const auto& w : rep.warnings) os << "warning: " << w << '\n';
    return {to_json(rep), os.str(), rep.purity_ok && rep.determinant_ok && rep.duality_ok};
}

Result l_function(const std::string& file, const Common& c, unsigned kmax, const std::vector<std::string>& xs) {
    const Problem P = parse_problem(read_json_file(file));
    const Point pt = parse_point(P, 1, "1", xs);
    const LFunctionReport rep = family_l_function(P.deformation, pt.x, kmax, sum_options(P, c));
    std::ostringstream os;
    os << "traces:";
    for (const auto& t : rep.traces) os << ' ' << t.get_str();
    os << "\nL(T) = (" << rep.numerator.to_string() << ") / (" << rep.denominator.to_string() << ")\n-chi_c = "
       << rep.minus_chi_c << ", rank " << rep.rank << ": " << verdict(rep.swan_bound_ok) << '\n';
    for (const auto& n : rep.notes) os << "note: " << n << '\n';
    return {to_json(rep), os.str(), rep.swan_bound_ok};
}

Result verify_connection(const std::string& file) {
    const MatForm A = parse_connection(read_json_file(file));
    const unsigned nv = A.nvars();
    const auto names = default_var_names(nv);
    const MatForm K = curvature(A);
    Json nonzero = Json::array();
    for (unsigned a = 0; a < nv; ++a)
        for (unsigned b = a + 1; b < nv; ++b)
            if (!r_is_zero(K.component(a, b))) nonzero.push_back("d" + names[a] + "^d" + names[b]);
    const bool flat = nonzero.empty();
    const int rank0 = poincare_rank(A);
    const int rank_inf = poincare_rank(to_s_chart(A));
    Json j{{"r", A.size()}, {"m", A.m()}, {"flat", flat}, {"curvature_nonzero", nonzero},
           {"poincare_rank_at_0", rank0}, {"poincare_rank_at_infinity", rank_inf}};
    std::ostringstream os;
    os << "flat: " << (flat ? "yes" : "no") << "\nPoincare rank at t = 0: " << rank0 << ", at t = infinity: " << rank_inf << '\n';
    bool ok = flat;
    if (flat && rank0 <= 0) {
        const LogRestriction L = log_restriction(A);
        Json res = Json::array();
        for (const auto& M : L.restriction) res.push_back(matrix_to_json(M, nv));
        j["logarithmic"] = Json{{"residue", matrix_to_json(L.residue, nv)},
                                {"restriction", res},
                                {"restriction_flat", L.restriction_flat},
                                {"residue_horizontal", L.residue_horizontal}};
        ok = L.restriction_flat && L.residue_horizontal;
        os << "logarithmic pole; restriction flat: " << verdict(L.restriction_flat)
           << ", residue horizontal: " << verdict(L.residue_horizontal) << '\n';
    } else if (flat && rank0 == 1) {
        Json block;
        try {
            const RankOneRestriction R = rank1_restriction(A);
            Json phi = Json::array();
            for (const auto& M : R.phi) phi.push_back(matrix_to_json(M, nv));
            block = Json{{"phi", phi}, {"r0", matrix_to_json(R.r0, nv)}, {"higgs", R.higgs}, {"commutes", R.commutes}};
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Internal) throw;
            block = Json{{"error", e.what()}};
            ok = false;
        }
        j["rank_one"] = block;
        os << "pole of Poincare rank 1; Higgs field and [R_0, Phi] = 0: " << verdict(ok) << '\n';
    }
    return {j, os.str(), ok};
}

Result verify_fts_cmd(const std::string& file) {
    const FTSTuple T = parse_fts(read_json_file(file));
    const FTSReport rep = verify_fts(T);
    Json j = to_json(rep);
    std::ostringstream os;
    for (int i = 0; i < FTSReport::kConditions; ++i)
        os << verdict(rep.conditions[i]) << "  " << kFTSConditionNames[i] << '\n';
    os << "assembled connection flat: " << (rep.assembled_flat ? "yes" : "no") << '\n';
    bool ok = rep.all_conditions;
    if (T.g) {
        const MetricReport m = verify_metric(T);
        j["metric"] = to_json(m);
        os << "metric: " << verdict(m.all()) << '\n';
        ok = ok && m.all();
    }
    return {j, os.str(), ok};
}

Result monodromy(const std::string& file) {
    const Filtration M = monodromy_filtration(parse_nilpotent(read_json_file(file)));
    std::ostringstream os;
    os << "k  dim M_k  dim gr_k\n";
    for (const auto& [k, S] : M.jumps) os << k << "  " << S.dim() << "  " << M.graded_dim(k) << '\n';
    return {to_json(M), os.str(), true};
}

Result acceptance(const Common& c) {
    AcceptanceOptions opts;
    opts.threads = c.threads;
    const auto results = run_acceptance(opts);
    Json arr = Json::array();
    std::string text;
    bool ok = true;
    for (const auto& r : results) {
        arr.push_back(Json{{"id", r.id},
                           {"title", r.title},
                           {"pass", r.pass},
                           {"detail", r.detail},
                           {"seconds", format_double(r.seconds)},
                           {"limit_seconds", format_double(r.limit_seconds)}});
        text += format_result_line(r) + "\n";
        ok = ok && r.pass;
    }
    return {Json{{"criteria", arr}, {"all_pass", ok}}, text, ok};
}

void print_error(const Common& c, ErrorCode code, const std::string& path, const std::string& message) {
    if (c.json) {
        Json j{{"error", Json{{"code", std::string(to_string(code))}, {"path", path}, {"message", message}}}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cerr << "arith-lg: " << message << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-field exponential sums, Frobenius data and connection checks"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_flag("--json", common.json, "Print a JSON report");
    app.add_option("--threads", common.threads, "Enumeration partitions")->check(CLI::Range(1u, 1024u));

    std::string file, tau = "1";
    std::vector<std::string> xs;
    unsigned k = 1, over = 1, kmax = 8, depth = 0;
    const auto with_file = [&](CLI::App* sub) { sub->add_option("file", file, "Input JSON")->required(); };
    const auto with_x = [&](CLI::App* sub) {
        sub->add_option("--x", xs, "Deformation parameter (repeat once per deformation)")->allow_extra_args(false);
    };

    auto* poly = app.add_subcommand("analyze-polytope", "Newton polyhedron of f");
    with_file(poly);
    auto* nondeg = app.add_subcommand("check-nondegenerate", "Non-degeneracy of F_x on the faces of its polyhedron");
    with_file(nondeg);
    with_x(nondeg);
    nondeg->add_option("--k", depth, "Largest extension degree to search (default: by budget)");
    auto* sum = app.add_subcommand("expsum", "Exponential sum of tau F_x over the torus of F_{q^k}");
    with_file(sum);
    with_x(sum);
    sum->add_option("--k", k, "Extension degree")->check(CLI::Range(1u, 64u));
    sum->add_option("--tau", tau, "Nonzero scalar tau");
    sum->add_option("--over", over, "tau and x live in F_{q^over}")->check(CLI::Range(1u, 64u));
    auto* frob = app.add_subcommand("frobenius", "Characteristic polynomial of Frobenius at (tau, x)");
    with_file(frob);
    with_x(frob);
    frob->add_option("--tau", tau, "Nonzero scalar tau");
    frob->add_option("--over", over, "tau and x live in F_{q^over}")->check(CLI::Range(1u, 64u));
    auto* lfun = app.add_subcommand("l-function", "L-function of the tau-family at fixed x");
    with_file(lfun);
    with_x(lfun);
    lfun->add_option("--kmax", kmax, "Number of traces")->check(CLI::Range(1u, 64u));
    auto* conn = app.add_subcommand("verify-connection", "Flatness, pole order, residue or Higgs field");
    with_file(conn);
    auto* fts = app.add_subcommand("verify-fts", "The six conditions and the assembled connection");
    with_file(fts);
    auto* mono = app.add_subcommand("monodromy", "Monodromy filtration of a nilpotent matrix");
    with_file(mono);
    auto* acc = app.add_subcommand("acceptance", "Run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Result r;
        if (*poly) r = analyze_polytope(file);
        else if (*nondeg) r = check_nondegenerate(file, common, xs, depth);
        else if (*sum) r = expsum(file, common, k, over, tau, xs);
        else if (*frob) r = frobenius(file, common, over, tau, xs);
        else if (*lfun) r = l_function(file, common, kmax, xs);
        else if (*conn) r = verify_connection(file);
        else if (*fts) r = verify_fts_cmd(file);
        else if (*mono) r = monodromy(file);
        else if (*acc) r = acceptance(common);
        if (common.json) std::cout << r.report.dump(2) << '\n';
        else std::cout << r.text;
        return r.ok ? 0 : 1;
    } catch (const JsonInputError& e) {
        print_error(common, e.code(), e.path(), e.what());
        return 2;
    } catch (const Error& e) {
        print_error(common, e.code(), "", e.what());
        return exit_code(e.code());
    } catch (const std::exception& e) {
        print_error(common, ErrorCode::Internal, "", e.what());
        return 1;
    }
}
