#include "arithlg/logtables.hpp"

#include <map>
#include <mutex>

namespace arithlg {

namespace {

std::mutex cache_mutex;
std::map<const FieldData*, std::shared_ptr<const LogTables>>& cache() {
    static std::map<const FieldData*, std::shared_ptr<const LogTables>> c;
    return c;
}

}  // namespace

bool LogTables::available(const FieldSpec& F) noexcept {
    const auto q = F.q();
    return q && *q <= kLogTableLimit;
}

std::shared_ptr<const LogTables> LogTables::get(const FieldSpec& F) {
    if (!available(F)) {
        throw Error(ErrorCode::BudgetExceeded, "log tables need q <= " + std::to_string(kLogTableLimit));
    }
    {
        std::lock_guard lock(cache_mutex);
        auto it = cache().find(&F.data());
        if (it != cache().end()) return it->second;
    }
    std::shared_ptr<const LogTables> built(new LogTables(F));
    std::lock_guard lock(cache_mutex);
    return cache().emplace(&F.data(), std::move(built)).first->second;
}

LogTables::LogTables(const FieldSpec& F) : field_(F) {
    const std::uint64_t q = F.order();
    const std::uint64_t p = F.p();
    order_ = static_cast<std::uint32_t>(q - 1);
    log_of_code_.assign(q, kZero);
    code_of_log_.resize(order_);
    trace_.resize(order_);

    // Trace is F_p-linear in the coordinates; tabulate it on the basis once.
    std::vector<std::uint64_t> basis_trace(F.m());
    for (unsigned i = 0; i < F.m(); ++i) {
        std::vector<std::uint64_t> c(F.m(), 0);
        c[i] = 1;
        basis_trace[i] = trace_to_prime(F.from_coords(c));
    }

    const FqElem g = F.primitive();
    FqElem cur = F.one();
    for (std::uint32_t l = 0; l < order_; ++l) {
        const std::uint64_t code = cur.code();
        code_of_log_[l] = static_cast<std::uint32_t>(code);
        log_of_code_[code] = l;
        std::uint64_t tr = 0;
        for (unsigned i = 0; i < F.m(); ++i) tr += cur.coords()[i] * basis_trace[i];
        trace_[l] = static_cast<std::uint32_t>(tr % p);
        cur *= g;
    }

    // 1 + g^l only changes the lowest base-p digit of the code.
    zech_.resize(order_);
    for (std::uint32_t l = 0; l < order_; ++l) {
        const std::uint64_t code = code_of_log_[l];
        const std::uint64_t d0 = code % p;
        const std::uint64_t shifted = code - d0 + (d0 + 1) % p;
        zech_[l] = log_of_code_[shifted];
    }
    minus_one_ = log_of_code_[p - 1];
}

std::uint32_t LogTables::log(const FqElem& a) const {
    if (!(a.field() == field_)) throw Error(ErrorCode::IncompatibleCharacteristic, "element from another field");
    return log_of_code_[a.code()];
}

FqElem LogTables::exp(std::uint32_t l) const {
    return l == kZero ? field_.zero() : field_.from_code(code_of_log_[l]);
}

std::uint32_t LogTables::log_of_int(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(field_.p());
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return log_of_code_[static_cast<std::uint64_t>(r)];
}

}  // namespace arithlg
