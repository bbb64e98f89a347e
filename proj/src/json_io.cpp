#include "arithlg/json_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace arithlg {

namespace {

std::string escape_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

// A position in the document: the value and its JSON pointer.
struct Node {
    const Json& j;
    std::string path;

    [[noreturn]] void fail(const std::string& msg) const { throw JsonInputError(path, msg); }

    void require_object(std::initializer_list<const char*> allowed) const {
        if (!j.is_object()) fail("expected an object");
        for (const auto& [key, value] : j.items()) {
            bool known = false;
            for (const char* a : allowed) known = known || key == a;
            if (!known) Node{value, path + "/" + escape_token(key)}.fail("unknown key \"" + key + "\"");
        }
    }

    bool has(const char* key) const { return j.contains(key); }

    Node at(const char* key) const {
        if (!j.contains(key)) fail(std::string("missing key \"") + key + "\"");
        return {j.at(key), path + "/" + escape_token(key)};
    }

    std::size_t size() const {
        if (!j.is_array()) fail("expected an array");
        return j.size();
    }

    Node operator[](std::size_t i) const { return {j.at(i), path + "/" + std::to_string(i)}; }

    std::string str() const {
        if (!j.is_string()) fail("expected a string");
        return j.get<std::string>();
    }

    // Counts and exponents: a JSON integer or a decimal string.
    std::int64_t integer(std::int64_t lo, std::int64_t hi) const {
        std::int64_t v = 0;
        if (j.is_number_integer()) {
            v = j.get<std::int64_t>();
        } else if (j.is_string()) {
            const std::string s = j.get<std::string>();
            mpz_class z;
            if (s.empty() || z.set_str(s, 10) != 0) fail("expected a decimal integer, got \"" + s + "\"");
            if (!z.fits_slong_p()) fail("integer out of range");
            v = z.get_si();
        } else {
            fail("expected an integer");
        }
        if (v < lo || v > hi) fail("value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return v;
    }

    mpq_class rational() const { return parse_rational(str(), path); }
};

std::uint64_t to_u64(const mpz_class& z) {
    return std::stoull(z.get_str());
}

LatticePoint parse_exponent(const Node& w, unsigned n) {
    if (w.size() != n) w.fail("exponent vector must have " + std::to_string(n) + " entries");
    LatticePoint out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(w[i].integer(-kMaxLatticeCoordinate, kMaxLatticeCoordinate));
    return out;
}

LaurentPoly parse_laurent(const FieldSpec& F, unsigned n, const Node& terms) {
    LaurentPoly f(n, F.zero());
    std::set<LatticePoint> seen;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Node t = terms[i];
        t.require_object({"c", "w"});
        const Node c = t.at("c");
        const Node w = t.at("w");
        const LatticePoint e = parse_exponent(w, n);
        if (!seen.insert(e).second) w.fail("repeated exponent");
        f.add_term(e, parse_element(F, c.str(), c.path));
    }
    return f;
}

// Polynomial in t, x1..xm given as a term list.
MPoly parse_mpoly(const Node& terms, unsigned nvars) {
    const auto names = default_var_names(nvars);
    MPoly p(nvars);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Node t = terms[i];
        t.require_object({"c", "deg"});
        Exponent e(nvars, 0);
        if (t.has("deg")) {
            const Node d = t.at("deg");
            if (!d.j.is_object()) d.fail("expected an object of variable degrees");
            for (const auto& [name, value] : d.j.items()) {
                const Node dv{value, d.path + "/" + escape_token(name)};
                std::size_t v = 0;
                while (v < nvars && names[v] != name) ++v;
                if (v == nvars) dv.fail("unknown variable \"" + name + "\"");
                e[v] = static_cast<unsigned>(dv.integer(0, 1000));
            }
        }
        p.add_term(e, t.at("c").rational());
    }
    return p;
}

RatFunc parse_entry(const Node& e, unsigned nvars) {
    if (e.j.is_string()) return RatFunc::constant(nvars, e.rational());
    if (e.j.is_array()) return RatFunc(parse_mpoly(e, nvars));
    e.require_object({"num", "den"});
    const MPoly den = parse_mpoly(e.at("den"), nvars);
    if (den.is_zero()) e.at("den").fail("zero denominator");
    return RatFunc(parse_mpoly(e.at("num"), nvars), den);
}

RMatrix parse_rmatrix(const Node& M, std::size_t r, unsigned nvars) {
    if (M.size() != r) M.fail("expected " + std::to_string(r) + " rows");
    RMatrix out;
    for (std::size_t i = 0; i < r; ++i) {
        const Node row = M[i];
        if (row.size() != r) row.fail("expected " + std::to_string(r) + " entries");
        std::vector<RatFunc> vals;
        for (std::size_t k = 0; k < r; ++k) vals.push_back(parse_entry(row[k], nvars));
        out.push_back(std::move(vals));
    }
    return out;
}

std::vector<RMatrix> parse_rmatrix_list(const Node& L, std::size_t r, unsigned m) {
    if (L.size() != m) L.fail("expected " + std::to_string(m) + " matrices, one per x_i");
    std::vector<RMatrix> out;
    for (std::size_t i = 0; i < m; ++i) out.push_back(parse_rmatrix(L[i], r, m + 1));
    return out;
}

Json point_json(const LatticePoint& w) {
    Json a = Json::array();
    for (auto x : w) a.push_back(x);
    return a;
}

Json complex_json(std::complex<double> z) {
    return Json{{"re", format_double(z.real())}, {"im", format_double(z.imag())}};
}

const char* status_name(FaceStatus s) {
    switch (s) {
        case FaceStatus::ConclusiveNondegenerate: return "nondegenerate";
        case FaceStatus::NoZeroFound: return "no_zero_found";
        case FaceStatus::Degenerate: return "degenerate";
    }
    return "?";
}

Json face_json(const Face& f) {
    Json pts = Json::array();
    for (const auto& w : f.points) pts.push_back(point_json(w));
    return Json{{"dim", f.dim}, {"points", pts}};
}

}  // namespace

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw JsonInputError("", "malformed JSON at byte " + std::to_string(e.byte));
    }
}

Json read_json_file(const std::string& filename) {
    std::ifstream in(filename, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + filename);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

mpq_class parse_rational(const std::string& text, const std::string& path) {
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    const auto digits = [](const std::string& s, bool sign) {
        std::size_t i = sign && !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (!digits(num, true) || !digits(den, false)) throw JsonInputError(path, "expected a rational \"a\" or \"a/b\", got \"" + text + "\"");
    const mpz_class a(num[0] == '+' ? num.substr(1) : num, 10), b(den, 10);
    if (b == 0) throw JsonInputError(path, "zero denominator in \"" + text + "\"");
    mpq_class q(a, b);
    q.canonicalize();
    return q;
}

FieldSpec parse_field(const Json& j, const std::string& path) {
    const Node node{j, path};
    node.require_object({"p", "m", "modulus"});
    const Node pn = node.at("p");
    const auto p = static_cast<std::uint64_t>(pn.integer(2, INT64_MAX));
    if (!is_prime(p)) pn.fail(std::to_string(p) + " is not prime");
    const unsigned m = node.has("m") ? static_cast<unsigned>(node.at("m").integer(1, 64)) : 1;
    try {
        if (!node.has("modulus")) return FieldSpec::make(p, m);
        const Node mod = node.at("modulus");
        if (mod.size() != m + 1) mod.fail("modulus must have m + 1 = " + std::to_string(m + 1) + " coefficients");
        std::vector<std::uint64_t> coeffs;
        for (std::size_t i = 0; i <= m; ++i) {
            const mpz_class c(mod[i].rational().get_num());
            if (mod[i].rational().get_den() != 1) mod[i].fail("modulus coefficients are integers");
            mpz_class r = c % mpz_class(std::to_string(p));
            if (r < 0) r += mpz_class(std::to_string(p));
            coeffs.push_back(to_u64(r));
        }
        return FieldSpec::with_modulus(p, coeffs);
    } catch (const JsonInputError&) {
        throw;
    } catch (const Error& e) {
        throw JsonInputError(path, e.what());
    }
}

Json to_json(const FieldSpec& F) {
    Json mod = Json::array();
    for (auto c : F.modulus()) mod.push_back(std::to_string(c));
    Json j{{"p", std::to_string(F.p())}, {"m", F.m()}};
    if (!F.is_canonical()) j["modulus"] = mod;
    return j;
}

FqElem parse_element(const FieldSpec& F, const std::string& text, const std::string& path) {
    const mpz_class p(std::to_string(F.p()));
    const auto reduce = [&](const mpz_class& z) {
        mpz_class r = z % p;
        if (r < 0) r += p;
        return to_u64(r);
    };
    if (text.rfind("g^", 0) == 0) {
        const std::string e = text.substr(2);
        mpz_class k;
        if (e.empty() || k.set_str(e, 10) != 0 || !k.fits_slong_p()) throw JsonInputError(path, "bad exponent in \"" + text + "\"");
        return F.primitive().pow_signed(k.get_si());
    }
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') throw JsonInputError(path, "unterminated coordinate list \"" + text + "\"");
        std::vector<std::uint64_t> coords;
        std::stringstream ss(text.substr(1, text.size() - 2));
        std::string part;
        while (std::getline(ss, part, ',')) {
            const auto b = part.find_first_not_of(' '), e = part.find_last_not_of(' ');
            const std::string tok = b == std::string::npos ? "" : part.substr(b, e - b + 1);
            mpz_class z;
            if (tok.empty() || z.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10) != 0)
                throw JsonInputError(path, "bad coordinate \"" + tok + "\"");
            coords.push_back(reduce(z));
        }
        if (coords.empty() || coords.size() > F.m())
            throw JsonInputError(path, "expected 1.." + std::to_string(F.m()) + " coordinates");
        coords.resize(F.m(), 0);
        return F.from_coords(coords);
    }
    const mpq_class q = parse_rational(text, path);
    const std::uint64_t den = reduce(q.get_den());
    if (den == 0) throw JsonInputError(path, "denominator of \"" + text + "\" vanishes mod " + std::to_string(F.p()));
    std::vector<std::uint64_t> num(F.m(), 0);
    num[0] = reduce(q.get_num());
    return F.from_coords(num) / make_elem(F, static_cast<std::int64_t>(den));
}

std::string element_to_string(const FqElem& a) {
    const auto c = a.coords();
    if (c.size() == 1) return std::to_string(c[0]);
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "]";
}

CycloNum parse_cyclo(const Json& j, const std::string& path) {
    const Node node{j, path};
    node.require_object({"p", "coords"});
    const Node pn = node.at("p");
    const auto p = static_cast<std::uint64_t>(pn.integer(2, 1'000'000));
    if (!is_prime(p)) pn.fail(std::to_string(p) + " is not prime");
    const Node c = node.at("coords");
    if (c.size() != p - 1) c.fail("expected p - 1 = " + std::to_string(p - 1) + " coordinates");
    std::vector<mpq_class> coords;
    for (std::size_t i = 0; i + 1 < p; ++i) coords.push_back(c[i].rational());
    return CycloNum(p, std::move(coords));
}

Json to_json(const CycloNum& z) {
    Json c = Json::array();
    for (const auto& x : z.coords()) c.push_back(x.get_str());
    return Json{{"p", std::to_string(z.p())}, {"coords", c}};
}

Json to_json(const CycloPoly& P) {
    Json c = Json::array();
    for (const auto& x : P.coeffs()) c.push_back(to_json(x)["coords"]);
    return Json{{"p", std::to_string(P.p())}, {"coeffs", c}, {"text", P.to_string()}};
}

Problem parse_problem(const Json& j) {
    const Node root{j, ""};
    root.require_object({"field", "n", "f", "deformations", "kind", "table", "budget", "tolerance", "max_rank"});
    const FieldSpec F = parse_field(root.at("field").j, "/field");
    const auto n = static_cast<unsigned>(root.at("n").integer(1, kMaxPolytopeDimension));

    const Node fn = root.at("f");
    LaurentPoly f = parse_laurent(F, n, fn);
    if (f.is_zero()) fn.fail("f is zero");

    std::vector<LaurentPoly> dirs;
    if (root.has("deformations")) {
        const Node d = root.at("deformations");
        for (std::size_t i = 0; i < d.size(); ++i) {
            LaurentPoly g = parse_laurent(F, n, d[i]);
            if (g.is_zero()) d[i].fail("deformation direction is zero");
            dirs.push_back(std::move(g));
        }
    }

    DeformationKind kind = DeformationKind::Subdiagram;
    if (root.has("kind")) {
        const Node k = root.at("kind");
        const std::string s = k.str();
        if (s == "subdiagram") kind = DeformationKind::Subdiagram;
        else if (s == "newton-preserving") kind = DeformationKind::NewtonPreserving;
        else k.fail("kind must be \"subdiagram\" or \"newton-preserving\"");
    }

    Deformation D = [&] {
        try {
            return make_deformation(std::move(f), std::move(dirs), kind);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::InvalidInput && e.code() != ErrorCode::DegeneratePolytope) throw;
            throw JsonInputError(root.has("deformations") ? "/deformations" : "/f", e.what());
        }
    }();

    MonomialTable table = monomial_table(D);
    bool explicit_table = false;
    if (root.has("table")) {
        const Node t = root.at("table");
        MonomialTable given;
        std::set<LatticePoint> seen;
        for (std::size_t i = 0; i < t.size(); ++i) {
            LatticePoint w = parse_exponent(t[i], n);
            if (!seen.insert(w).second) t[i].fail("repeated exponent");
            given.points.push_back(std::move(w));
        }
        for (const auto& w : table.points)
            if (!seen.count(w)) t.fail("table misses a support exponent of f or g");
        table = std::move(given);
        explicit_table = true;
    }

    Problem P{F, std::move(D), std::move(table), explicit_table};
    if (root.has("budget")) P.budget = static_cast<std::uint64_t>(root.at("budget").integer(1, INT64_MAX));
    if (root.has("tolerance")) {
        const Node t = root.at("tolerance");
        const std::string s = t.str();
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || *end != '\0' || errno != 0 || !(v > 0)) t.fail("tolerance must be a positive decimal");
        P.tolerance = v;
    }
    if (root.has("max_rank")) P.max_rank = static_cast<std::size_t>(root.at("max_rank").integer(1, 64));
    return P;
}

MatForm parse_connection(const Json& j) {
    const Node root{j, ""};
    root.require_object({"r", "m", "A"});
    const auto r = static_cast<std::size_t>(root.at("r").integer(1, 16));
    const auto m = static_cast<unsigned>(root.at("m").integer(0, 8));
    MatForm A(1, r, m);
    const Node comps = root.at("A");
    if (!comps.j.is_object()) comps.fail("expected an object keyed by t, x1, ...");
    const auto names = default_var_names(m + 1);
    for (const auto& [name, value] : comps.j.items()) {
        const Node c{value, comps.path + "/" + escape_token(name)};
        std::size_t v = 0;
        while (v <= m && names[v] != name) ++v;
        if (v > m) c.fail("unknown differential d" + name);
        A.component(static_cast<unsigned>(v)) = parse_rmatrix(c, r, m + 1);
    }
    return A;
}

FTSTuple parse_fts(const Json& j) {
    const Node root{j, ""};
    root.require_object({"r", "m", "A", "Phi", "R0", "Rinf", "g"});
    const auto r = static_cast<std::size_t>(root.at("r").integer(1, 16));
    const auto m = static_cast<unsigned>(root.at("m").integer(1, 8));
    auto A = parse_rmatrix_list(root.at("A"), r, m);
    auto Phi = parse_rmatrix_list(root.at("Phi"), r, m);
    auto R0 = parse_rmatrix(root.at("R0"), r, m + 1);
    auto Rinf = parse_rmatrix(root.at("Rinf"), r, m + 1);
    std::optional<RMatrix> g;
    if (root.has("g")) g = parse_rmatrix(root.at("g"), r, m + 1);
    try {
        return make_fts(r, m, std::move(A), std::move(Phi), std::move(R0), std::move(Rinf), std::move(g));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InvalidInput) throw;
        throw JsonInputError("", e.what());
    }
}

QMatrix parse_nilpotent(const Json& j) {
    const Node root{j, ""};
    root.require_object({"N"});
    const Node N = root.at("N");
    const std::size_t d = N.size();
    if (d == 0) N.fail("empty matrix");
    QMatrix out;
    for (std::size_t i = 0; i < d; ++i) {
        if (N[i].size() != d) N[i].fail("matrix is not square");
        QVector row;
        for (std::size_t k = 0; k < d; ++k) row.push_back(N[i][k].rational());
        out.push_back(std::move(row));
    }
    return out;
}

Json to_json(const Polytope& P) {
    Json verts = Json::array(), facets = Json::array();
    for (const auto& v : P.vertices()) verts.push_back(point_json(v));
    for (const auto& f : P.facets()) facets.push_back(Json{{"normal", point_json(f.normal)}, {"offset", f.offset}});
    Json j{{"ambient_dim", P.ambient_dim()}, {"dim", P.dim()}, {"degenerate", P.degenerate()},
           {"vertices", verts},           {"facets", facets}};
    if (P.degenerate()) {
        j["convenient"] = false;
        j["normalized_volume"] = nullptr;
    } else {
        j["convenient"] = is_convenient(P);
        j["normalized_volume"] = std::to_string(normalized_volume(P));
    }
    j["face_count"] = P.faces().size();
    return j;
}

Json to_json(const NondegeneracyVerdict& v) {
    Json faces = Json::array();
    for (const auto& fc : v.faces) {
        Json f = face_json(fc.face);
        f["status"] = status_name(fc.status);
        faces.push_back(f);
    }
    Json j{{"verdict", v.kind == NondegeneracyVerdict::Kind::VerifiedUpTo ? "verified_up_to" : "degenerate_at"},
           {"K", v.K},
           {"conclusive", v.conclusive},
           {"faces", faces}};
    if (v.kind == NondegeneracyVerdict::Kind::DegenerateAt && v.face) {
        Json pt = Json::array();
        for (const auto& a : v.point) pt.push_back(element_to_string(a));
        j["witness"] = Json{{"face", face_json(*v.face)}, {"degree", v.k}, {"point", pt}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const FrobeniusReport& r) {
    Json ps = Json::array(), emb = Json::array(), warn = Json::array();
    for (const auto& z : r.power_sums) ps.push_back(to_json(z));
    for (const auto& e : r.embeddings) {
        Json roots = Json::array();
        for (auto z : e.roots) roots.push_back(complex_json(z));
        emb.push_back(Json{{"index", e.index},
                           {"roots", roots},
                           {"purity_deviation", format_double(e.purity_deviation)},
                           {"determinant_deviation", format_double(e.determinant_deviation)}});
    }
    for (const auto& w : r.warnings) warn.push_back(w);
    return Json{{"n", r.n},
                {"q", std::to_string(r.q)},
                {"rank", r.rank},
                {"character", "psi(a) = zeta_p^Tr(a)"},
                {"power_sums", ps},
                {"char_poly", to_json(r.char_poly)},
                {"embeddings", emb},
                {"max_purity_deviation", format_double(r.max_purity_deviation)},
                {"max_determinant_deviation", format_double(r.max_determinant_deviation)},
                {"purity_ok", r.purity_ok},
                {"determinant_ok", r.determinant_ok},
                {"duality_ok", r.duality_ok},
                {"warnings", warn}};
}

Json to_json(const LFunctionReport& r) {
    Json traces = Json::array(), notes = Json::array();
    for (const auto& c : r.traces) traces.push_back(c.get_str());
    for (const auto& n : r.notes) notes.push_back(n);
    return Json{{"numerator", to_json(r.numerator)},
                {"denominator", to_json(r.denominator)},
                {"minus_chi_c", r.minus_chi_c},
                {"rank", r.rank},
                {"swan_bound_ok", r.swan_bound_ok},
                {"stable", r.stable},
                {"recurrence_agrees", r.recurrence_agrees},
                {"traces", traces},
                {"cross_checked", r.cross_checked},
                {"non_lisse", r.non_lisse},
                {"notes", notes}};
}

Json to_json(const Filtration& F) {
    Json jumps = Json::array(), graded = Json::array();
    for (const auto& [k, S] : F.jumps) {
        Json basis = Json::array();
        for (const auto& v : S.basis()) {
            Json row = Json::array();
            for (const auto& x : v) row.push_back(x.get_str());
            basis.push_back(row);
        }
        jumps.push_back(Json{{"k", k}, {"dim", S.dim()}, {"basis", basis}});
    }
    const int span = static_cast<int>(F.dim);
    for (int k = -span; k <= span; ++k)
        if (const auto g = F.graded_dim(k)) graded.push_back(Json{{"k", k}, {"dim", g}});
    return Json{{"dim", F.dim}, {"jumps", jumps}, {"graded", graded}};
}

Json to_json(const FTSReport& r) {
    Json conds = Json::array();
    for (int i = 0; i < FTSReport::kConditions; ++i)
        conds.push_back(Json{{"name", kFTSConditionNames[i]}, {"holds", r.conditions[i]}});
    return Json{{"conditions", conds}, {"all_conditions", r.all_conditions}, {"assembled_flat", r.assembled_flat}};
}

Json to_json(const MetricReport& r) {
    return Json{{"phi_self_adjoint", r.phi_self_adjoint},
                {"r0_self_adjoint", r.r0_self_adjoint},
                {"rinf_skew_adjoint", r.rinf_skew_adjoint},
                {"g_flat", r.g_flat},
                {"all", r.all()}};
}

Json matrix_to_json(const RMatrix& M, unsigned nvars) {
    const auto names = default_var_names(nvars);
    Json rows = Json::array();
    for (const auto& row : M) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(e.to_string(names));
        rows.push_back(r);
    }
    return rows;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v == 0 ? 0.0 : v);
    return buf;
}

int exit_code(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::BudgetExceeded:
            return 3;
        case ErrorCode::Unstable:
        case ErrorCode::RankMismatch:
        case ErrorCode::ToleranceExceeded:
        case ErrorCode::NotMeromorphicAlongT:
        case ErrorCode::NotFlat:
        case ErrorCode::WrongRank:
        case ErrorCode::Internal:
            return 1;
        default:
            return 2;
    }
}

}  // namespace arithlg
