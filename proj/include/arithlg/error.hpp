#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arithlg {

enum class ErrorCode {
    NotPrime,
    DegreeZero,
    IncompatibleCharacteristic,
    NotAnExtension,
    BudgetExceeded,
    BadIndex,
    LengthTooShort,
    Unstable,
    DimensionUnsupported,
    DegeneratePolytope,
    FaceMismatch,
    ZeroCoordinate,
    TableMismatch,
    ZeroTau,
    RankMismatch,
    ToleranceExceeded,
    NotNilpotent,
    NotMeromorphicAlongT,
    NotFlat,
    WrongRank,
    SingularMetric,
    InvalidInput,
    Internal,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code is stable and is what the
/// CLI maps onto exit statuses; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace arithlg
