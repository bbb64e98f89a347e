#include "arithlg/frobdata.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace arithlg {

namespace {

using cld = std::complex<long double>;

Deformation rebased(const Deformation& D, const FieldSpec& B) {
    if (field_of(D.base) == B) return D;
    Deformation out{embedded(D.base, B), {}, D.kind};
    for (const auto& g : D.directions) out.directions.push_back(embedded(g, B));
    return out;
}

mpz_class big_pow(std::uint64_t q, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, e);
    return r;
}

// Roots of a monic polynomial (low-degree-first coefficients) from the
// companion matrix, then polished by Newton in long double.
std::vector<std::complex<double>> monic_roots(const std::vector<std::complex<double>>& c) {
    const auto r = static_cast<Eigen::Index>(c.size()) - 1;
    if (r <= 0) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(r, r);
    for (Eigen::Index i = 1; i < r; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < r; ++i) comp(i, r - 1) = -c[static_cast<std::size_t>(i)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    std::vector<std::complex<double>> roots;
    for (Eigen::Index i = 0; i < r; ++i) {
        cld z(solver.eigenvalues()(i).real(), solver.eigenvalues()(i).imag());
        for (int it = 0; it < 8; ++it) {
            cld v = 0, dv = 0;
            for (std::size_t j = c.size(); j-- > 0;) {
                dv = dv * z + v;
                v = v * z + cld(c[j].real(), c[j].imag());
            }
            if (std::abs(dv) == 0.0L) break;
            z -= v / dv;
        }
        roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    return roots;
}

void nondegeneracy_warnings(const Deformation& D, const LaurentPoly& Fx, const FieldSpec& B,
                            const FrobeniusOptions& opts, std::vector<std::string>& warnings) {
    const Polytope base_delta = newton_polyhedron_of(D.base);
    if (!base_delta.contains_in_interior(LatticePoint(D.n(), 0))) {
        warnings.push_back("the origin is not an interior point of the Newton polyhedron; purity is not expected");
    }
    if (opts.nondegeneracy_limit == 0) return;
    const Polytope delta = newton_polyhedron_of(Fx);
    if (delta.degenerate()) {
        warnings.push_back("F_x has a lower-dimensional Newton polyhedron");
        return;
    }
    if (normalized_volume(delta) != normalized_volume(base_delta)) {
        warnings.push_back("F_x has a smaller Newton polyhedron than f");
    }
    const unsigned K = default_nondegeneracy_depth(B, D.n(), opts.nondegeneracy_limit);
    const auto verdict = check_nondegenerate(Fx, delta, K, opts.sums.budget, opts.sums.threads);
    if (verdict.kind == NondegeneracyVerdict::Kind::DegenerateAt) {
        warnings.push_back("F_x is degenerate on a face (critical point found over degree " +
                           std::to_string(verdict.k) + ")");
    }
}

}  // namespace

std::vector<CycloNum> stalk_power_sums(const Deformation& D, std::span<const FqElem> x, const FqElem& tau,
                                       std::size_t r, const SumOptions& opts) {
    const Deformation DB = rebased(D, tau.field());
    std::vector<CycloNum> ps;
    for (std::size_t k = 1; k <= 2 * r; ++k) {
        CycloNum s = family_sum(DB, static_cast<unsigned>(k), tau, x, opts);
        ps.push_back(D.n() % 2 == 0 ? s : -s);
    }
    return ps;
}

FrobeniusReport frobenius_report(const Deformation& D, std::span<const FqElem> x, const FqElem& tau,
                                 const FrobeniusOptions& opts) {
    if (tau.is_zero()) throw Error(ErrorCode::ZeroTau, "tau must be nonzero");
    const FieldSpec& B = tau.field();
    FrobeniusReport rep;
    rep.n = D.n();
    rep.q = B.order();
    rep.rank = normalized_volume(newton_polyhedron_of(D.base));
    if (rep.rank > opts.max_rank) {
        throw Error(ErrorCode::BudgetExceeded, "rank " + std::to_string(rep.rank) + " exceeds the limit " +
                                                   std::to_string(opts.max_rank));
    }
    const Deformation DB = rebased(D, B);
    nondegeneracy_warnings(DB, specialize(DB, x, B), B, opts, rep.warnings);

    rep.power_sums = stalk_power_sums(DB, x, tau, rep.rank, opts.sums);
    rep.char_poly = char_poly_from_power_sums(rep.power_sums, rep.rank);
    if (!validate_power_sums(rep.char_poly, rep.power_sums)) {
        throw Error(ErrorCode::RankMismatch,
                    "p_" + std::to_string(rep.rank + 1) + ".." + std::to_string(2 * rep.rank) +
                        " do not follow the degree-" + std::to_string(rep.rank) +
                        " recurrence; the parameter is degenerate or the rank is wrong");
    }

    const std::uint64_t p = B.p();
    const std::size_t r = rep.rank;
    const CycloNum a0 = rep.char_poly.coeff(0);
    const CycloPoly dual = rep.char_poly.conjugated(-1);
    rep.duality_ok = true;
    for (std::size_t j = 0; j <= r; ++j) {
        const mpq_class scale(big_pow(rep.q, static_cast<unsigned long>(rep.n) * (r - j)));
        if (!(rep.char_poly.coeff(r - j) * scale == a0 * dual.coeff(j))) rep.duality_ok = false;
    }

    const double qf = static_cast<double>(rep.q);
    const double weight = std::pow(qf, rep.n / 2.0);
    const double det = std::pow(qf, rep.n * static_cast<double>(r) / 2.0);
    for (auto a : embedding_indices(p)) {
        EmbeddingCheck e;
        e.index = a;
        const auto coeffs = rep.char_poly.embedded(a);
        e.roots = monic_roots(coeffs);
        for (const auto& z : e.roots) e.purity_deviation = std::max(e.purity_deviation, std::abs(std::abs(z) - weight) / weight);
        e.determinant_deviation = std::abs(std::abs(coeffs.front()) - det) / det;
        rep.max_purity_deviation = std::max(rep.max_purity_deviation, e.purity_deviation);
        rep.max_determinant_deviation = std::max(rep.max_determinant_deviation, e.determinant_deviation);
        rep.embeddings.push_back(std::move(e));
    }
    rep.purity_ok = rep.max_purity_deviation < opts.tolerance;
    rep.determinant_ok = rep.max_determinant_deviation < opts.tolerance;
    if (opts.strict && !(rep.purity_ok && rep.determinant_ok)) {
        throw Error(ErrorCode::ToleranceExceeded,
                    "purity deviation " + std::to_string(rep.max_purity_deviation) + ", determinant deviation " +
                        std::to_string(rep.max_determinant_deviation));
    }
    return rep;
}

LFunctionReport l_function_from_traces(std::span<const CycloNum> c, std::size_t rank) {
    LFunctionReport rep;
    rep.rank = rank;
    for (const auto& ck : c) {
        const mpq_class v = ck.rational_value();
        if (v.get_den() != 1) throw Error(ErrorCode::InvalidInput, "trace " + v.get_str() + " is not an integer");
        rep.traces.push_back(v.get_num());
    }
    auto rec = linear_recurrence_reconstruct(c);
    rep.numerator = std::move(rec.numerator);
    rep.denominator = std::move(rec.denominator);
    rep.stable = rec.stable;
    rep.recurrence_agrees = rec.recurrence_agrees;
    rep.minus_chi_c = rep.numerator.degree() - rep.denominator.degree();
    rep.swan_bound_ok = rep.minus_chi_c <= static_cast<int>(rank);
    rep.notes.push_back("tameness at 0 and the slope bound at infinity are not verified separately; only -chi_c <= r is checked");
    if (!rep.stable) rep.notes.push_back("the reconstruction changed when the last trace was dropped; raise kmax");
    return rep;
}

LFunctionReport family_l_function(const Deformation& D, std::span<const FqElem> x, unsigned kmax,
                                  const SumOptions& opts) {
    const std::size_t r = normalized_volume(newton_polyhedron_of(D.base));
    if (kmax < 2 * (r + 1)) {
        throw Error(ErrorCode::InvalidInput,
                    "kmax " + std::to_string(kmax) + " is below 2(r+1) = " + std::to_string(2 * (r + 1)));
    }
    const std::uint64_t p = field_of(D.base).p();
    std::vector<CycloNum> c;
    bool all_checked = true;
    for (unsigned k = 1; k <= kmax; ++k) {
        const auto t = tau_summed_trace(D, k, x, opts);
        all_checked = all_checked && t.cross_checked;
        c.push_back(CycloNum::rational(p, mpq_class(t.value)));
    }
    LFunctionReport rep = l_function_from_traces(c, r);
    rep.cross_checked = all_checked;
    const auto support = specialize(D, x).support();
    rep.non_lisse = std::all_of(support.begin(), support.end(), [](const LatticePoint& w) {
        return std::all_of(w.begin(), w.end(), [](std::int64_t e) { return e == 0; });
    });
    if (rep.non_lisse) rep.notes.push_back("F_x is constant: the tau-family is not lisse of rank r and the bound says nothing");
    return rep;
}

Subspace Filtration::at(int k) const {
    auto it = jumps.upper_bound(k);
    if (it == jumps.begin()) return Subspace(dim);
    return std::prev(it)->second;
}

std::size_t Filtration::graded_dim(int k) const { return at(k).dim() - at(k - 1).dim(); }

bool is_monodromy_filtration(const QMatrix& N, const Filtration& M) {
    const std::size_t d = N.size();
    if (M.dim != d) return false;
    if (d == 0) return true;
    if (M.jumps.empty() || !(M.jumps.rbegin()->second == Subspace::whole(d))) return false;
    const int lo = M.jumps.begin()->first - 1;
    const int hi = M.jumps.rbegin()->first + 2;
    for (int k = lo + 1; k <= hi; ++k) {
        if (!M.at(k).contains(M.at(k - 1))) return false;
        if (!M.at(k - 2).contains(M.at(k).mapped(N))) return false;
    }
    const int span = std::max(std::abs(lo), std::abs(hi));
    for (int k = 1; k <= span; ++k) {
        if (M.graded_dim(k) != M.graded_dim(-k)) return false;
        const Subspace below = M.at(-k - 1);
        const Subspace img = M.at(k).mapped(q_pow(N, static_cast<unsigned>(k))) + below;
        if (img.dim() - below.dim() != M.graded_dim(k)) return false;
    }
    return true;
}

Filtration monodromy_filtration(const QMatrix& N) {
    const std::size_t d = N.size();
    for (const auto& row : N)
        if (row.size() != d) throw Error(ErrorCode::InvalidInput, "matrix is not square");
    Filtration M;
    M.dim = d;
    if (d == 0) return M;
    std::vector<QMatrix> pw{q_identity(d)};
    for (std::size_t j = 1; j <= d; ++j) pw.push_back(q_mul(pw.back(), N));
    if (!q_is_zero(pw[d])) throw Error(ErrorCode::NotNilpotent, "N^" + std::to_string(d) + " is not zero");

    std::vector<Subspace> ker, im;
    for (std::size_t j = 0; j <= d; ++j) {
        ker.push_back(Subspace::kernel(pw[j]));
        im.push_back(Subspace::image(pw[j]));
    }
    // M_k = sum over i - j = k of ker N^{i+1} ∩ im N^j.
    const int D = static_cast<int>(d);
    std::size_t prev = 0;
    for (int k = -D; k <= D; ++k) {
        Subspace Mk(d);
        for (int j = std::max(0, -k); j < D; ++j) {
            const int i = k + j;
            const Subspace& K = ker[static_cast<std::size_t>(std::min(i + 1, D))];
            Mk = Mk + K.intersect(im[static_cast<std::size_t>(j)]);
        }
        if (Mk.dim() != prev) {
            prev = Mk.dim();
            M.jumps.emplace(k, std::move(Mk));
        }
    }
    if (!is_monodromy_filtration(N, M)) throw Error(ErrorCode::Internal, "computed filtration fails its defining properties");
    return M;
}

}  // namespace arithlg
