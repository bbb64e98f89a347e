#include "arithlg/laurent.hpp"

#include "arithlg/logtables.hpp"
#include "torus_scan.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace arithlg {

LaurentPoly laurent_from_terms(const FieldSpec& F, unsigned n,
                               const std::vector<std::pair<std::int64_t, LatticePoint>>& terms) {
    LaurentPoly f(n, F.zero());
    for (const auto& [c, w] : terms) f.add_term(w, F.from_int(c));
    return f;
}

const FieldSpec& field_of(const LaurentPoly& f) { return f.zero_coeff().field(); }

LaurentPoly reduce_mod(const QLaurentPoly& f, const FieldSpec& F) {
    LaurentPoly out(f.n(), F.zero());
    const mpz_class p(std::to_string(F.p()));
    for (const auto& [w, c] : f.terms()) {
        mpz_class num = c.get_num() % p;
        mpz_class den = c.get_den() % p;
        if (num < 0) num += p;
        if (den == 0) {
            throw Error(ErrorCode::InvalidInput, "coefficient " + c.get_str() + " has a denominator divisible by p");
        }
        out.add_term(w, F.from_int(num.get_si()) / F.from_int(den.get_si()));
    }
    return out;
}

LaurentPoly embedded(const LaurentPoly& f, const FieldSpec& target) {
    if (field_of(f) == target) return f;
    LaurentPoly out(f.n(), target.zero());
    for (const auto& [w, c] : f.terms()) out.add_term(w, embed(c, target));
    return out;
}

FqElem evaluate(const LaurentPoly& f, std::span<const FqElem> t) {
    if (t.size() != f.n()) throw Error(ErrorCode::InvalidInput, "point has the wrong number of coordinates");
    const FieldSpec& T = t.front().field();
    for (const auto& ti : t) {
        if (!(ti.field() == T)) throw Error(ErrorCode::InvalidInput, "point coordinates in different fields");
        if (ti.is_zero()) throw Error(ErrorCode::ZeroCoordinate, "evaluation point has a zero coordinate");
    }
    FqElem acc = T.zero();
    for (const auto& [w, c] : f.terms()) {
        FqElem term = field_of(f) == T ? c : embed(c, T);
        for (unsigned i = 0; i < f.n(); ++i) {
            if (w[i] != 0) term *= t[i].pow_signed(w[i]);
        }
        acc += term;
    }
    return acc;
}

std::string to_string(const LaurentPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : f.terms()) {
        if (!first) os << " + ";
        first = false;
        os << c.to_string();
        for (unsigned i = 0; i < f.n(); ++i) {
            if (w[i] == 0) continue;
            os << "*t" << (i + 1);
            if (w[i] != 1) os << '^' << w[i];
        }
    }
    return os.str();
}

Polytope newton_polyhedron_of(const LaurentPoly& f) {
    if (f.is_zero()) throw Error(ErrorCode::InvalidInput, "the zero polynomial has no Newton polyhedron");
    const auto s = f.support();
    return newton_polyhedron(s);
}

Deformation make_deformation(LaurentPoly base, std::vector<LaurentPoly> directions, DeformationKind kind) {
    const Polytope delta = newton_polyhedron_of(base);
    delta.require_full_dimensional();
    for (std::size_t k = 0; k < directions.size(); ++k) {
        const auto& g = directions[k];
        if (g.n() != base.n()) throw Error(ErrorCode::InvalidInput, "deformation direction in the wrong dimension");
        if (!(field_of(g) == field_of(base))) {
            throw Error(ErrorCode::InvalidInput, "deformation direction over a different field");
        }
        for (const auto& [w, c] : g.terms()) {
            const bool ok = kind == DeformationKind::Subdiagram ? delta.contains_in_interior(w) : delta.contains(w);
            if (!ok) {
                std::string ws;
                for (auto x : w) ws += (ws.empty() ? "" : ",") + std::to_string(x);
                throw Error(ErrorCode::InvalidInput,
                            "exponent (" + ws + ") of g_" + std::to_string(k + 1) +
                                (kind == DeformationKind::Subdiagram ? " is not interior to" : " lies outside") +
                                " the Newton polyhedron");
            }
        }
    }
    return Deformation{std::move(base), std::move(directions), kind};
}

LaurentPoly specialize(const Deformation& D, std::span<const FqElem> x, const FieldSpec& field) {
    if (x.size() != D.m()) {
        throw Error(ErrorCode::InvalidInput,
                    "expected " + std::to_string(D.m()) + " deformation parameters, got " + std::to_string(x.size()));
    }
    LaurentPoly F = embedded(D.base, field);
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k].field() == field)) throw Error(ErrorCode::InvalidInput, "deformation parameter in another field");
        if (x[k].is_zero()) continue;
        F += embedded(D.directions[k], field).scaled(x[k]);
    }
    return F;
}

LaurentPoly specialize(const Deformation& D, std::span<const FqElem> x) {
    return specialize(D, x, x.empty() ? field_of(D.base) : x.front().field());
}

std::optional<std::size_t> MonomialTable::index_of(const LatticePoint& w) const {
    auto it = std::find(points.begin(), points.end(), w);
    if (it == points.end()) return std::nullopt;
    return static_cast<std::size_t>(it - points.begin());
}

MonomialTable monomial_table(const Deformation& D) {
    MonomialTable t;
    std::set<LatticePoint> seen;
    auto add = [&](const LaurentPoly& g) {
        for (const auto& [w, c] : g.terms()) {
            if (seen.insert(w).second) t.points.push_back(w);
        }
    };
    add(D.base);
    for (const auto& g : D.directions) add(g);
    return t;
}

MonomialTable lattice_point_table(const Deformation& D) {
    MonomialTable t = monomial_table(D);
    const Polytope delta = newton_polyhedron_of(D.base);
    delta.require_full_dimensional();
    const unsigned n = D.n();
    LatticePoint lo(n, 0), hi(n, 0);
    for (const auto& g : delta.generators()) {
        for (unsigned i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], g[i]);
            hi[i] = std::max(hi[i], g[i]);
        }
    }
    std::set<LatticePoint> seen(t.points.begin(), t.points.end());
    LatticePoint w = lo;
    for (;;) {
        if (delta.contains(w) && seen.insert(w).second) t.points.push_back(w);
        unsigned i = n;
        while (i > 0 && w[i - 1] == hi[i - 1]) {
            w[i - 1] = lo[i - 1];
            --i;
        }
        if (i == 0) break;
        ++w[i - 1];
    }
    const auto head = static_cast<std::ptrdiff_t>(monomial_table(D).size());
    std::sort(t.points.begin() + head, t.points.end());
    return t;
}

std::vector<FqElem> phi_map(const Deformation& D, const MonomialTable& table, const FqElem& tau,
                            std::span<const FqElem> x) {
    if (tau.is_zero()) throw Error(ErrorCode::ZeroTau, "tau must be nonzero");
    auto require = [&](const LaurentPoly& g) {
        for (const auto& [w, c] : g.terms()) {
            if (!table.index_of(w)) throw Error(ErrorCode::TableMismatch, "monomial table misses a support exponent");
        }
    };
    require(D.base);
    for (const auto& g : D.directions) require(g);
    const LaurentPoly F = specialize(D, x, tau.field());
    std::vector<FqElem> out;
    out.reserve(table.size());
    for (const auto& w : table.points) out.push_back(tau * F.coeff(w));
    return out;
}

namespace {

template <class P>
P restrict_to_face(const P& f, const Face& sigma) {
    std::vector<LatticePoint> supp = f.support();
    const Polytope delta = newton_polyhedron(supp);
    bool found = false;
    for (const auto& face : delta.faces()) found = found || face.points == sigma.points;
    if (!found) throw Error(ErrorCode::FaceMismatch, "not a face of the Newton polyhedron of f");
    return f.filtered([&](const LatticePoint& w) { return sigma.contains(w); });
}

std::uint64_t modp(std::int64_t v, std::uint64_t p) {
    const auto pp = static_cast<std::int64_t>(p);
    std::int64_t r = v % pp;
    return static_cast<std::uint64_t>(r < 0 ? r + pp : r);
}

// Rank of integer vectors reduced mod p.
std::size_t rank_mod_p(const std::vector<LatticePoint>& rows, std::uint64_t p) {
    if (rows.empty()) return 0;
    const std::size_t n = rows.front().size();
    std::vector<std::vector<std::uint64_t>> m;
    for (const auto& r : rows) {
        std::vector<std::uint64_t> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = modp(r[i], p);
        m.push_back(std::move(v));
    }
    auto inv = [p](std::uint64_t a) {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m.size(); ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        const std::uint64_t iv = inv(m[rank][col]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col] == 0) continue;
            const std::uint64_t fct = m[i][col] * iv % p;
            for (std::size_t j = 0; j < n; ++j) m[i][j] = (m[i][j] + (p - fct) * m[rank][j]) % p;
        }
        ++rank;
    }
    return rank;
}

// Equations sum_j coeffs[i][j] t^{monomials[j]} = 0 over a field E.
struct MonomialSystem {
    FieldSpec field;
    std::vector<LatticePoint> monomials;
    std::vector<std::vector<FqElem>> coeffs;
};

MonomialSystem log_derivative_system(const LaurentPoly& f, const FieldSpec& E) {
    MonomialSystem sys{E, f.support(), {}};
    for (unsigned i = 0; i < f.n(); ++i) {
        std::vector<FqElem> row;
        for (const auto& [w, c] : f.terms()) row.push_back(embed(c, E) * E.from_int(w[i]));
        sys.coeffs.push_back(std::move(row));
    }
    return sys;
}

bool system_vanishes_identically(const MonomialSystem& sys) {
    for (const auto& row : sys.coeffs)
        for (const auto& c : row)
            if (!c.is_zero()) return false;
    return true;
}

// Visits the indices in [begin, end) of torus points where every equation
// vanishes; stops early when on_zero returns false.
template <class OnZero>
void scan_range(const MonomialSystem& sys, const TorusEnumeration& torus, std::uint64_t begin, std::uint64_t end,
                OnZero&& on_zero) {
    if (begin >= end) return;
    if (LogTables::available(sys.field)) {
        const auto lt = LogTables::get(sys.field);
        std::vector<std::vector<std::uint32_t>> cl;
        for (const auto& row : sys.coeffs) {
            std::vector<std::uint32_t> r;
            for (const auto& c : row) r.push_back(lt->log(c));
            cl.push_back(std::move(r));
        }
        detail::LogOdometer odo(*lt, sys.monomials, torus, begin);
        for (std::uint64_t idx = begin; idx < end; ++idx, odo.advance()) {
            const auto& d = odo.logs();
            bool all_zero = true;
            for (const auto& row : cl) {
                std::uint32_t acc = LogTables::kZero;
                for (std::size_t j = 0; j < d.size(); ++j) acc = lt->add(acc, lt->mul(row[j], d[j]));
                if (acc != LogTables::kZero) {
                    all_zero = false;
                    break;
                }
            }
            if (all_zero && !on_zero(idx)) return;
        }
        return;
    }
    detail::ElemOdometer odo(sys.monomials, torus, begin);
    for (std::uint64_t idx = begin; idx < end; ++idx, odo.advance()) {
        const auto& mono = odo.values();
        bool all_zero = true;
        for (const auto& row : sys.coeffs) {
            FqElem acc = sys.field.zero();
            for (std::size_t j = 0; j < mono.size(); ++j) acc += row[j] * mono[j];
            if (!acc.is_zero()) {
                all_zero = false;
                break;
            }
        }
        if (all_zero && !on_zero(idx)) return;
    }
}

std::uint64_t count_zeros(const MonomialSystem& sys, const TorusEnumeration& torus, unsigned threads) {
    const auto parts = std::max(1u, threads);
    std::vector<std::uint64_t> counts(parts, 0);
    detail::run_partitioned(torus, threads, [&](std::size_t c, std::uint64_t b, std::uint64_t e) {
        scan_range(sys, torus, b, e, [&](std::uint64_t) {
            ++counts[c];
            return true;
        });
    });
    std::uint64_t total = 0;
    for (auto v : counts) total += v;
    return total;
}

std::optional<std::uint64_t> first_zero(const MonomialSystem& sys, const TorusEnumeration& torus, unsigned threads) {
    const auto parts = std::max(1u, threads);
    std::vector<std::optional<std::uint64_t>> found(parts);
    detail::run_partitioned(torus, threads, [&](std::size_t c, std::uint64_t b, std::uint64_t e) {
        scan_range(sys, torus, b, e, [&](std::uint64_t idx) {
            found[c] = idx;
            return false;
        });
    });
    for (const auto& f : found) {
        if (f) return f;
    }
    return std::nullopt;
}

mpz_class torus_size(const FieldSpec& E, unsigned n) {
    mpz_class s;
    mpz_pow_ui(s.get_mpz_t(), mpz_class(E.q_big() - 1).get_mpz_t(), n);
    return s;
}

}  // namespace

LaurentPoly face_restrict(const LaurentPoly& f, const Face& sigma) { return restrict_to_face(f, sigma); }
QLaurentPoly face_restrict(const QLaurentPoly& f, const Face& sigma) { return restrict_to_face(f, sigma); }

unsigned default_nondegeneracy_depth(const FieldSpec& F, unsigned n, std::uint64_t limit) {
    unsigned K = 1;
    for (unsigned k = 2; k < 64; ++k) {
        mpz_class qk;
        mpz_pow_ui(qk.get_mpz_t(), F.q_big().get_mpz_t(), k);
        mpz_class s;
        mpz_pow_ui(s.get_mpz_t(), mpz_class(qk - 1).get_mpz_t(), n);
        if (s > mpz_class(std::to_string(limit))) break;
        K = k;
    }
    return K;
}

NondegeneracyVerdict check_nondegenerate(const LaurentPoly& f, const Polytope& delta, unsigned K,
                                         std::uint64_t budget, unsigned threads) {
    if (K == 0) throw Error(ErrorCode::DegreeZero, "search depth must be positive");
    const Polytope own = newton_polyhedron_of(f);
    if (own.generators() != delta.generators()) {
        throw Error(ErrorCode::FaceMismatch, "polytope is not the Newton polyhedron of f");
    }
    const FieldSpec& F = field_of(f);
    const std::uint64_t p = F.p();

    NondegeneracyVerdict v;
    v.K = K;
    std::vector<std::size_t> pending;
    for (const auto& sigma : faces_not_containing_origin(delta)) {
        const LaurentPoly fs = face_restrict(f, sigma);
        const auto exps = fs.support();
        FaceCheck fc{sigma, FaceStatus::NoZeroFound};
        if (rank_mod_p(exps, p) == exps.size()) {
            fc.status = FaceStatus::ConclusiveNondegenerate;
        } else if (rank_mod_p(exps, p) == 0) {
            // Every log derivative of f_σ is identically zero.
            fc.status = FaceStatus::Degenerate;
            v.kind = NondegeneracyVerdict::Kind::DegenerateAt;
            v.face = sigma;
            v.point.assign(f.n(), F.one());
            v.k = 1;
            v.faces.push_back(fc);
            return v;
        } else {
            pending.push_back(v.faces.size());
        }
        v.faces.push_back(std::move(fc));
    }
    v.conclusive = pending.empty();
    if (pending.empty()) return v;

    mpz_class total = 0;
    for (unsigned k = 1; k <= K; ++k) total += torus_size(degree_k_field(F, k), f.n());
    total *= static_cast<unsigned long>(pending.size());
    if (total > mpz_class(std::to_string(budget))) {
        throw Error(ErrorCode::BudgetExceeded, "non-degeneracy search needs " + total.get_str() +
                                                   " point evaluations, budget is " + std::to_string(budget));
    }
    for (unsigned k = 1; k <= K; ++k) {
        const FieldSpec E = degree_k_field(F, k);
        const TorusEnumeration torus(E, f.n(), budget);
        for (auto idx : pending) {
            FaceCheck& fc = v.faces[idx];
            const MonomialSystem sys = log_derivative_system(face_restrict(f, fc.face), E);
            if (auto hit = first_zero(sys, torus, threads)) {
                fc.status = FaceStatus::Degenerate;
                v.kind = NondegeneracyVerdict::Kind::DegenerateAt;
                v.face = fc.face;
                v.point = torus.at(*hit);
                v.k = k;
                return v;
            }
        }
    }
    return v;
}

std::uint64_t critical_count(const LaurentPoly& f, unsigned k, std::uint64_t budget, unsigned threads) {
    const FieldSpec E = degree_k_field(field_of(f), k);
    const MonomialSystem sys = log_derivative_system(f, E);
    const TorusEnumeration torus(E, f.n(), budget);
    if (system_vanishes_identically(sys)) return torus.size();
    return count_zeros(sys, torus, threads);
}

}  // namespace arithlg
