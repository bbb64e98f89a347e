#pragma once

// Dense matrices over Q and the subspace operations the monodromy filtration
// needs. A subspace is stored by its reduced row echelon basis, which makes
// equality a plain comparison.

#include "arithlg/error.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace arithlg {

using QVector = std::vector<mpq_class>;
using QMatrix = std::vector<QVector>;  // row-major

QMatrix q_identity(std::size_t d);
QMatrix q_zero(std::size_t rows, std::size_t cols);
QMatrix q_mul(const QMatrix& a, const QMatrix& b);
QVector q_apply(const QMatrix& a, const QVector& v);
QMatrix q_pow(const QMatrix& a, unsigned e);
bool q_is_zero(const QMatrix& a);
std::size_t q_rank(QMatrix a);

class Subspace {
public:
    /// The zero subspace of Q^dim.
    explicit Subspace(std::size_t dim) : ambient_(dim) {}
    /// Span of the given vectors.
    static Subspace span(std::size_t dim, const std::vector<QVector>& vectors);
    static Subspace whole(std::size_t dim);
    static Subspace kernel(const QMatrix& a);
    /// Column space.
    static Subspace image(const QMatrix& a);

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    /// Reduced row echelon basis.
    const std::vector<QVector>& basis() const noexcept { return basis_; }

    bool contains(const QVector& v) const;
    bool contains(const Subspace& other) const;
    Subspace operator+(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    Subspace mapped(const QMatrix& a) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_;
    std::vector<QVector> basis_;
};

std::string to_string(const QVector& v);

}  // namespace arithlg
