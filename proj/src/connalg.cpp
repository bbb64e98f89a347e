#include "arithlg/connalg.hpp"

namespace arithlg {

namespace {

unsigned nvars_of(const RMatrix& a) { return a.empty() || a.front().empty() ? 1 : a.front().front().nvars(); }

void require_square(const RMatrix& a, std::size_t r, const std::string& what) {
    if (a.size() != r) throw Error(ErrorCode::InvalidInput, what + " is not " + std::to_string(r) + "x" + std::to_string(r));
    for (const auto& row : a)
        if (row.size() != r) throw Error(ErrorCode::InvalidInput, what + " is not square");
}

void require_t_free(const RMatrix& a, const std::string& what) {
    for (const auto& row : a)
        for (const auto& e : row)
            if (!e.independent_of(0)) throw Error(ErrorCode::InvalidInput, what + " depends on t");
}

void require_vars(const RMatrix& a, unsigned nvars, const std::string& what) {
    for (const auto& row : a)
        for (const auto& e : row)
            if (e.nvars() != nvars) throw Error(ErrorCode::InvalidInput, what + " uses the wrong variable count");
}

RMatrix shifted(const RMatrix& a, int k) {
    RMatrix r = a;
    for (auto& row : r)
        for (auto& e : row) e = e.times_power(0, k);
    return r;
}

RMatrix at_t_zero(const RMatrix& a) {
    RMatrix r = a;
    for (auto& row : r)
        for (auto& e : row) e = e.at_zero(0);
    return r;
}

int min_valuation(const RMatrix& a) {
    int v = INT_MAX;
    for (const auto& row : a)
        for (const auto& e : row) v = std::min(v, e.valuation(0));
    return v;
}

RatFunc negate_t(const RatFunc& f) { return f.negated_var(0); }
RatFunc invert_t(const RatFunc& f) { return f.inverted_var(0); }

bool all_commute(const std::vector<RMatrix>& phi, const RMatrix& r) {
    for (const auto& p : phi)
        if (!r_is_zero(r_bracket(r, p))) return false;
    return true;
}

bool pairwise_commute(const std::vector<RMatrix>& phi) {
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = i + 1; j < phi.size(); ++j)
            if (!r_is_zero(r_bracket(phi[i], phi[j]))) return false;
    return true;
}

}  // namespace

RMatrix r_zero(std::size_t r, unsigned nvars) { return RMatrix(r, std::vector<RatFunc>(r, RatFunc(nvars))); }

RMatrix r_identity(std::size_t r, unsigned nvars) {
    RMatrix m = r_zero(r, nvars);
    for (std::size_t i = 0; i < r; ++i) m[i][i] = RatFunc::constant(nvars, 1);
    return m;
}

RMatrix r_add(const RMatrix& a, const RMatrix& b) {
    RMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] += b.at(i).at(j);
    return r;
}

RMatrix r_sub(const RMatrix& a, const RMatrix& b) {
    RMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] -= b.at(i).at(j);
    return r;
}

RMatrix r_mul(const RMatrix& a, const RMatrix& b) {
    const unsigned nv = nvars_of(a);
    const std::size_t cols = b.empty() ? 0 : b.front().size();
    RMatrix r(a.size(), std::vector<RatFunc>(cols, RatFunc(nv)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t l = 0; l < b.size(); ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < cols; ++j)
                if (!b[l][j].is_zero()) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

RMatrix r_scale(const RMatrix& a, const RatFunc& s) {
    RMatrix r = a;
    for (auto& row : r)
        for (auto& e : row) e = e * s;
    return r;
}

RMatrix r_bracket(const RMatrix& a, const RMatrix& b) { return r_sub(r_mul(a, b), r_mul(b, a)); }

RMatrix r_transpose(const RMatrix& a) {
    if (a.empty()) return a;
    RMatrix r(a.front().size(), std::vector<RatFunc>(a.size(), RatFunc(nvars_of(a))));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
    return r;
}

RMatrix r_derivative(const RMatrix& a, unsigned var) {
    RMatrix r = a;
    for (auto& row : r)
        for (auto& e : row) e = e.derivative(var);
    return r;
}

RMatrix r_map(const RMatrix& a, RatFunc (*fn)(const RatFunc&)) {
    RMatrix r = a;
    for (auto& row : r)
        for (auto& e : row) e = fn(e);
    return r;
}

bool r_is_zero(const RMatrix& a) {
    for (const auto& row : a)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

bool r_equal(const RMatrix& a, const RMatrix& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (!(a[i][j] == b[i][j])) return false;
    }
    return true;
}

RatFunc r_determinant(const RMatrix& a) {
    const std::size_t n = a.size();
    const unsigned nv = nvars_of(a);
    if (n == 0) return RatFunc::constant(nv, 1);
    if (n == 1) return a[0][0];
    RatFunc det(nv);
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j].is_zero()) continue;
        RMatrix minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<RatFunc> row;
            for (std::size_t l = 0; l < n; ++l)
                if (l != j) row.push_back(a[i][l]);
            minor.push_back(std::move(row));
        }
        const RatFunc term = a[0][j] * r_determinant(minor);
        det = j % 2 ? det - term : det + term;
    }
    return det;
}

RMatrix r_constant(const std::vector<std::vector<mpq_class>>& c, unsigned nvars) {
    RMatrix r;
    for (const auto& row : c) {
        std::vector<RatFunc> out;
        for (const auto& x : row) out.push_back(RatFunc::constant(nvars, x));
        r.push_back(std::move(out));
    }
    return r;
}

MatForm::MatForm(int degree, std::size_t r, unsigned m) : degree_(degree), r_(r), m_(m) {
    if (degree < 0 || degree > 2) throw Error(ErrorCode::InvalidInput, "form degree must be 0, 1 or 2");
    const std::size_t nv = m + 1;
    const std::size_t count = degree == 0 ? 1 : degree == 1 ? nv : nv * (nv - 1) / 2;
    comps_.assign(count, r_zero(r, m + 1));
}

std::size_t MatForm::index(unsigned a, unsigned b) const {
    const unsigned nv = m_ + 1;
    if (!(a < b && b < nv)) throw Error(ErrorCode::BadIndex, "2-form component needs a < b <= m");
    std::size_t idx = 0;
    for (unsigned k = 0; k < a; ++k) idx += nv - 1 - k;
    return idx + (b - a - 1);
}

RMatrix& MatForm::component(unsigned a) {
    if (degree_ != 1 || a > m_) throw Error(ErrorCode::BadIndex, "no such 1-form component");
    return comps_[a];
}

const RMatrix& MatForm::component(unsigned a) const { return const_cast<MatForm*>(this)->component(a); }

RMatrix& MatForm::component(unsigned a, unsigned b) {
    if (degree_ != 2) throw Error(ErrorCode::BadIndex, "not a 2-form");
    return comps_[index(a, b)];
}

const RMatrix& MatForm::component(unsigned a, unsigned b) const { return const_cast<MatForm*>(this)->component(a, b); }

bool MatForm::is_zero() const {
    for (const auto& c : comps_)
        if (!r_is_zero(c)) return false;
    return true;
}

bool operator==(const MatForm& a, const MatForm& b) {
    if (a.degree_ != b.degree_ || a.r_ != b.r_ || a.m_ != b.m_) return false;
    for (std::size_t i = 0; i < a.comps_.size(); ++i)
        if (!r_equal(a.comps_[i], b.comps_[i])) return false;
    return true;
}

MatForm curvature(const MatForm& A) {
    if (A.degree() != 1) throw Error(ErrorCode::InvalidInput, "curvature needs a 1-form");
    MatForm F(2, A.size(), A.m());
    for (unsigned a = 0; a <= A.m(); ++a)
        for (unsigned b = a + 1; b <= A.m(); ++b) {
            RMatrix c = r_sub(r_derivative(A.component(b), a), r_derivative(A.component(a), b));
            F.component(a, b) = r_add(c, r_bracket(A.component(a), A.component(b)));
        }
    return F;
}

int poincare_rank(const MatForm& A) {
    if (A.degree() != 1) throw Error(ErrorCode::InvalidInput, "Poincare rank needs a 1-form");
    int need = 0;
    bool holomorphic = true;
    for (unsigned a = 0; a <= A.m(); ++a) {
        const int v = min_valuation(A.component(a));
        if (v == INT_MAX) continue;
        if (v < 0) holomorphic = false;
        need = std::max(need, a == 0 ? -v - 1 : -v);
    }
    return holomorphic ? -1 : need;
}

MatForm to_s_chart(const MatForm& A) {
    if (A.degree() != 1) throw Error(ErrorCode::InvalidInput, "chart change needs a 1-form");
    MatForm S(1, A.size(), A.m());
    S.component(0) = shifted(r_scale(r_map(A.component(0), invert_t), RatFunc::constant(A.nvars(), -1)), -2);
    for (unsigned i = 1; i <= A.m(); ++i) S.component(i) = r_map(A.component(i), invert_t);
    return S;
}

LogRestriction log_restriction(const MatForm& A) {
    if (!curvature(A).is_zero()) throw Error(ErrorCode::NotFlat, "connection has nonzero curvature");
    const int rank = poincare_rank(A);
    if (rank > 0) throw Error(ErrorCode::WrongRank, "Poincare rank " + std::to_string(rank) + ", expected 0");
    LogRestriction out;
    for (unsigned i = 1; i <= A.m(); ++i) out.restriction.push_back(at_t_zero(A.component(i)));
    out.residue = at_t_zero(shifted(A.component(0), 1));
    out.restriction_flat = true;
    for (unsigned i = 1; i <= A.m(); ++i)
        for (unsigned j = i + 1; j <= A.m(); ++j) {
            const auto& Oi = out.restriction[i - 1];
            const auto& Oj = out.restriction[j - 1];
            const RMatrix c = r_add(r_sub(r_derivative(Oj, i), r_derivative(Oi, j)), r_bracket(Oi, Oj));
            if (!r_is_zero(c)) out.restriction_flat = false;
        }
    out.residue_horizontal = true;
    for (unsigned i = 1; i <= A.m(); ++i) {
        const RMatrix h = r_sub(r_derivative(out.residue, i), r_bracket(out.residue, out.restriction[i - 1]));
        if (!r_is_zero(h)) out.residue_horizontal = false;
    }
    return out;
}

RankOneRestriction rank1_restriction(const MatForm& A) {
    if (!curvature(A).is_zero()) throw Error(ErrorCode::NotFlat, "connection has nonzero curvature");
    const int rank = poincare_rank(A);
    if (rank != 1) throw Error(ErrorCode::WrongRank, "Poincare rank " + std::to_string(rank) + ", expected 1");
    RankOneRestriction out;
    for (unsigned i = 1; i <= A.m(); ++i) out.phi.push_back(at_t_zero(shifted(A.component(i), 1)));
    out.r0 = at_t_zero(shifted(A.component(0), 2));
    out.higgs = pairwise_commute(out.phi);
    out.commutes = all_commute(out.phi, out.r0);
    if (!out.higgs || !out.commutes) throw Error(ErrorCode::Internal, "flat connection with a non-Higgs leading term");
    return out;
}

FTSTuple make_fts(std::size_t r, unsigned m, std::vector<RMatrix> A, std::vector<RMatrix> Phi, RMatrix R0, RMatrix Rinf,
                  std::optional<RMatrix> g) {
    if (A.size() != m || Phi.size() != m) {
        throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(m) + " matrices for A and Phi");
    }
    std::vector<std::pair<const RMatrix*, std::string>> all;
    for (unsigned i = 0; i < m; ++i) {
        all.emplace_back(&A[i], "A_" + std::to_string(i + 1));
        all.emplace_back(&Phi[i], "Phi_" + std::to_string(i + 1));
    }
    all.emplace_back(&R0, "R0");
    all.emplace_back(&Rinf, "Rinf");
    if (g) all.emplace_back(&*g, "g");
    for (const auto& [mat, name] : all) {
        require_square(*mat, r, name);
        require_vars(*mat, m + 1, name);
        require_t_free(*mat, name);
    }
    if (g) {
        if (!r_equal(*g, r_transpose(*g))) throw Error(ErrorCode::SingularMetric, "g is not symmetric");
        if (r_determinant(*g).is_zero()) throw Error(ErrorCode::SingularMetric, "g is singular");
    }
    return FTSTuple{r, m, std::move(A), std::move(Phi), std::move(R0), std::move(Rinf), std::move(g)};
}

MatForm assemble_nabla(const FTSTuple& T) {
    MatForm out(1, T.r, T.m);
    for (unsigned i = 1; i <= T.m; ++i) out.component(i) = r_add(T.A[i - 1], shifted(T.Phi[i - 1], -1));
    out.component(0) = r_sub(shifted(T.R0, -2), shifted(T.Rinf, -1));
    if (poincare_rank(to_s_chart(out)) > 0) throw Error(ErrorCode::Internal, "assembled connection is not logarithmic at infinity");
    return out;
}

FTSReport verify_fts(const FTSTuple& T) {
    FTSReport rep;
    const auto& A = T.A;
    const auto& Phi = T.Phi;
    const unsigned m = T.m;
    // Indices below run over x-variables 1..m; A[i-1] is the dx_i part.
    bool flat = true, phi_horizontal = true;
    for (unsigned i = 1; i <= m; ++i)
        for (unsigned j = i + 1; j <= m; ++j) {
            const auto &Ai = A[i - 1], &Aj = A[j - 1], &Pi = Phi[i - 1], &Pj = Phi[j - 1];
            if (!r_is_zero(r_add(r_sub(r_derivative(Aj, i), r_derivative(Ai, j)), r_bracket(Ai, Aj)))) flat = false;
            RMatrix dphi = r_sub(r_derivative(Pj, i), r_derivative(Pi, j));
            dphi = r_add(r_add(dphi, r_bracket(Ai, Pj)), r_bracket(Pi, Aj));
            if (!r_is_zero(dphi)) phi_horizontal = false;
        }
    bool rinf_horizontal = true, r0_equation = true;
    for (unsigned i = 1; i <= m; ++i) {
        const auto &Ai = A[i - 1], &Pi = Phi[i - 1];
        if (!r_is_zero(r_add(r_derivative(T.Rinf, i), r_bracket(Ai, T.Rinf)))) rinf_horizontal = false;
        const RMatrix lhs = r_add(r_add(r_derivative(T.R0, i), r_bracket(Ai, T.R0)), Pi);
        if (!r_equal(lhs, r_bracket(Pi, T.Rinf))) r0_equation = false;
    }
    rep.conditions[0] = flat;
    rep.conditions[1] = rinf_horizontal;
    rep.conditions[2] = pairwise_commute(Phi);
    rep.conditions[3] = all_commute(Phi, T.R0);
    rep.conditions[4] = phi_horizontal;
    rep.conditions[5] = r0_equation;
    rep.all_conditions = true;
    for (bool c : rep.conditions) rep.all_conditions = rep.all_conditions && c;
    rep.assembled_flat = curvature(assemble_nabla(T)).is_zero();
    if (rep.all_conditions != rep.assembled_flat) {
        throw Error(ErrorCode::Internal, "the six conditions and the curvature of the assembled connection disagree");
    }
    return rep;
}

MetricReport verify_metric(const FTSTuple& T) {
    if (!T.g) throw Error(ErrorCode::SingularMetric, "no metric given");
    const RMatrix& g = *T.g;
    const auto self_adjoint = [&](const RMatrix& X) { return r_equal(r_mul(r_transpose(X), g), r_mul(g, X)); };
    MetricReport rep;
    rep.phi_self_adjoint = true;
    rep.g_flat = true;
    for (unsigned i = 1; i <= T.m; ++i) {
        rep.phi_self_adjoint = rep.phi_self_adjoint && self_adjoint(T.Phi[i - 1]);
        const RMatrix& Ai = T.A[i - 1];
        rep.g_flat = rep.g_flat && r_equal(r_derivative(g, i), r_add(r_mul(r_transpose(Ai), g), r_mul(g, Ai)));
    }
    rep.r0_self_adjoint = self_adjoint(T.R0);
    rep.rinf_skew_adjoint =
        r_is_zero(r_add(r_mul(r_transpose(T.Rinf), g), r_mul(g, T.Rinf)));
    return rep;
}

bool pairing_flat(const MatForm& assembled, const RMatrix& g) {
    if (assembled.degree() != 1) throw Error(ErrorCode::InvalidInput, "pairing check needs a 1-form");
    for (unsigned i = 1; i <= assembled.m(); ++i) {
        const RMatrix& Ai = assembled.component(i);
        const RMatrix rhs = r_add(r_mul(r_transpose(Ai), g), r_mul(g, r_map(Ai, negate_t)));
        if (!r_equal(r_derivative(g, i), rhs)) return false;
    }
    // Pulling dt back along t -> -t flips its sign.
    const RMatrix& At = assembled.component(0);
    const RMatrix dt = r_sub(r_mul(r_transpose(At), g), r_mul(g, r_map(At, negate_t)));
    return r_is_zero(r_sub(dt, r_derivative(g, 0)));
}

}  // namespace arithlg
