#pragma once

// Discrete-log representation of a small field: an element is g^l for the
// field's primitive g, with a sentinel for zero. Products are additions of
// logs, sums go through the Zech logarithm Z(l) = log(1 + g^l), and the
// absolute trace is a table lookup. Built once per field and shared.

#include "arithlg/ffield.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace arithlg {

/// Tables are built only for q up to this bound (four 32-bit arrays of size q).
inline constexpr std::uint64_t kLogTableLimit = 1ULL << 22;

class LogTables {
public:
    static constexpr std::uint32_t kZero = UINT32_MAX;

    /// Shared tables for F; BudgetExceeded when q > kLogTableLimit.
    static std::shared_ptr<const LogTables> get(const FieldSpec& F);
    static bool available(const FieldSpec& F) noexcept;

    const FieldSpec& field() const noexcept { return field_; }
    /// q - 1, the modulus for logs.
    std::uint32_t group_order() const noexcept { return order_; }

    std::uint32_t log(const FqElem& a) const;
    std::uint32_t log_of_code(std::uint64_t code) const { return log_of_code_[code]; }
    std::uint32_t code_of_log(std::uint32_t l) const { return l == kZero ? 0 : code_of_log_[l]; }
    FqElem exp(std::uint32_t l) const;

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == kZero || b == kZero) return kZero;
        const std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<std::uint32_t>(s >= order_ ? s - order_ : s);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (a == kZero) return b;
        if (b == kZero) return a;
        const std::uint32_t diff = b >= a ? b - a : b + order_ - a;
        const std::uint32_t z = zech_[diff];
        return z == kZero ? kZero : mul(a, z);
    }
    std::uint32_t neg(std::uint32_t a) const { return mul(a, minus_one_); }
    /// Tr_{F_q/F_p}(g^l), 0 for the zero element.
    std::uint32_t trace(std::uint32_t l) const { return l == kZero ? 0 : trace_[l]; }
    /// Log of an integer reduced mod p.
    std::uint32_t log_of_int(std::int64_t v) const;

private:
    explicit LogTables(const FieldSpec& F);
    FieldSpec field_;
    std::uint32_t order_;
    std::uint32_t minus_one_;
    std::vector<std::uint32_t> log_of_code_;
    std::vector<std::uint32_t> code_of_log_;
    std::vector<std::uint32_t> zech_;
    std::vector<std::uint32_t> trace_;
};

}  // namespace arithlg
