#include "arithlg/qmatrix.hpp"

namespace arithlg {

namespace {

// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m.front().size();
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        const mpq_class inv = 1 / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c] == 0) continue;
            const mpq_class f = m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    m.resize(row);
    return pivots;
}

QMatrix transpose(const QMatrix& a, std::size_t cols) {
    QMatrix t(cols, QVector(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
    return t;
}

}  // namespace

QMatrix q_identity(std::size_t d) {
    QMatrix m = q_zero(d, d);
    for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
    return m;
}

QMatrix q_zero(std::size_t rows, std::size_t cols) { return QMatrix(rows, QVector(cols, mpq_class(0))); }

QMatrix q_mul(const QMatrix& a, const QMatrix& b) {
    if (a.empty()) return {};
    const std::size_t inner = b.size();
    if (a.front().size() != inner) throw Error(ErrorCode::InvalidInput, "matrix shapes do not match");
    const std::size_t cols = inner ? b.front().size() : 0;
    QMatrix r = q_zero(a.size(), cols);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t l = 0; l < inner; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

QVector q_apply(const QMatrix& a, const QVector& v) {
    QVector r(a.size(), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

QMatrix q_pow(const QMatrix& a, unsigned e) {
    QMatrix r = q_identity(a.size());
    for (unsigned i = 0; i < e; ++i) r = q_mul(r, a);
    return r;
}

bool q_is_zero(const QMatrix& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

std::size_t q_rank(QMatrix a) { return rref(a).size(); }

Subspace Subspace::span(std::size_t dim, const std::vector<QVector>& vectors) {
    Subspace s(dim);
    QMatrix m;
    for (const auto& v : vectors) {
        if (v.size() != dim) throw Error(ErrorCode::InvalidInput, "vector of the wrong dimension");
        m.push_back(v);
    }
    rref(m);
    s.basis_ = std::move(m);
    return s;
}

Subspace Subspace::whole(std::size_t dim) { return span(dim, q_identity(dim)); }

Subspace Subspace::kernel(const QMatrix& a) {
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    QMatrix m = a;
    const auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<QVector> vecs;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        QVector v(cols, mpq_class(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        vecs.push_back(std::move(v));
    }
    return span(cols, vecs);
}

Subspace Subspace::image(const QMatrix& a) {
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    return span(a.size(), transpose(a, cols));
}

bool Subspace::contains(const QVector& v) const {
    std::vector<QVector> vs = basis_;
    vs.push_back(v);
    return span(ambient_, vs).dim() == dim();
}

bool Subspace::contains(const Subspace& other) const { return (*this + other).dim() == dim(); }

Subspace Subspace::operator+(const Subspace& other) const {
    std::vector<QVector> vs = basis_;
    vs.insert(vs.end(), other.basis_.begin(), other.basis_.end());
    return span(ambient_, vs);
}

Subspace Subspace::intersect(const Subspace& other) const {
    // Vectors a·B1 = b·B2: kernel of the stacked basis matrix, read off on the first block.
    if (dim() == 0 || other.dim() == 0) return Subspace(ambient_);
    QMatrix stacked;
    for (const auto& v : basis_) stacked.push_back(v);
    for (const auto& v : other.basis_) {
        QVector neg = v;
        for (auto& x : neg) x = -x;
        stacked.push_back(neg);
    }
    const Subspace rel = kernel(transpose(stacked, ambient_));
    std::vector<QVector> vecs;
    for (const auto& c : rel.basis()) {
        QVector v(ambient_, mpq_class(0));
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < ambient_; ++j) v[j] += c[i] * basis_[i][j];
        vecs.push_back(std::move(v));
    }
    return span(ambient_, vecs);
}

Subspace Subspace::mapped(const QMatrix& a) const {
    std::vector<QVector> vecs;
    for (const auto& v : basis_) vecs.push_back(q_apply(a, v));
    return span(a.size(), vecs);
}

std::string to_string(const QVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

}  // namespace arithlg
