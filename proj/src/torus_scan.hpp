#pragma once

// Shared inner loop for every torus enumeration: walk the odometer of
// exponent vectors e (t_i = g^{e_i}) and keep the value of each monomial t^w
// up to date. Moving one axis by one step multiplies t^w by g^{w_a}, also when
// the axis wraps, because g^{q-1} = 1.

#include "arithlg/ffield.hpp"
#include "arithlg/logtables.hpp"
#include "arithlg/polytope.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace arithlg::detail {

inline std::uint64_t reduce_exponent(std::int64_t w, std::uint64_t order) {
    const auto o = static_cast<std::int64_t>(order);
    const std::int64_t r = w % o;
    return static_cast<std::uint64_t>(r < 0 ? r + o : r);
}

/// Monomial values as discrete logs.
class LogOdometer {
public:
    LogOdometer(const LogTables& lt, const std::vector<LatticePoint>& monomials, const TorusEnumeration& torus,
                std::uint64_t begin)
        : order_(lt.group_order()), e_(torus.exponents_at(begin)) {
        const std::size_t n = e_.size();
        step_.assign(monomials.size(), std::vector<std::uint32_t>(n));
        logs_.assign(monomials.size(), 0);
        for (std::size_t j = 0; j < monomials.size(); ++j) {
            unsigned __int128 s = 0;
            for (std::size_t a = 0; a < n; ++a) {
                step_[j][a] = static_cast<std::uint32_t>(reduce_exponent(monomials[j][a], order_));
                s += static_cast<unsigned __int128>(step_[j][a]) * e_[a];
            }
            logs_[j] = static_cast<std::uint32_t>(s % order_);
        }
    }

    const std::vector<std::uint32_t>& logs() const noexcept { return logs_; }

    void advance() {
        for (std::size_t a = e_.size(); a-- > 0;) {
            for (std::size_t j = 0; j < logs_.size(); ++j) {
                const std::uint64_t s = std::uint64_t{logs_[j]} + step_[j][a];
                logs_[j] = static_cast<std::uint32_t>(s >= order_ ? s - order_ : s);
            }
            if (++e_[a] < order_) return;
            e_[a] = 0;
        }
    }

private:
    std::uint64_t order_;
    std::vector<std::uint64_t> e_;
    std::vector<std::vector<std::uint32_t>> step_;
    std::vector<std::uint32_t> logs_;
};

/// Monomial values as field elements, for fields too large for log tables.
class ElemOdometer {
public:
    ElemOdometer(const std::vector<LatticePoint>& monomials, const TorusEnumeration& torus, std::uint64_t begin)
        : order_(torus.axis_length()), e_(torus.exponents_at(begin)) {
        const FqElem g = torus.field().primitive();
        const std::size_t n = e_.size();
        for (const auto& w : monomials) {
            std::vector<FqElem> steps;
            mpz_class total = 0;
            for (std::size_t a = 0; a < n; ++a) {
                const std::uint64_t r = reduce_exponent(w[a], order_);
                steps.push_back(g.pow(r));
                total += mpz_class(std::to_string(r)) * mpz_class(std::to_string(e_[a]));
            }
            step_.push_back(std::move(steps));
            values_.push_back(g.pow(total));
        }
    }

    const std::vector<FqElem>& values() const noexcept { return values_; }

    void advance() {
        for (std::size_t a = e_.size(); a-- > 0;) {
            for (std::size_t j = 0; j < values_.size(); ++j) values_[j] *= step_[j][a];
            if (++e_[a] < order_) return;
            e_[a] = 0;
        }
    }

private:
    std::uint64_t order_;
    std::vector<std::uint64_t> e_;
    std::vector<std::vector<FqElem>> step_;
    std::vector<FqElem> values_;
};

/// Runs work(chunk, begin, end) on contiguous chunks, one thread per chunk.
template <class Work>
void run_partitioned(const TorusEnumeration& torus, unsigned threads, Work&& work) {
    const auto chunks = torus.partition(std::max(1u, threads));
    if (chunks.size() <= 1) {
        for (std::size_t c = 0; c < chunks.size(); ++c) work(c, chunks[c].first, chunks[c].second);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(chunks.size());
    for (std::size_t c = 0; c < chunks.size(); ++c) {
        pool.emplace_back([&, c] { work(c, chunks[c].first, chunks[c].second); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace arithlg::detail
