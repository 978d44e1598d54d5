#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace ordlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class ErrorCode {
    Parse,
    NonCanonical,
    DepthExceeded,
    NotLimit,
    OutOfSpace,
    SpaceMismatch,
    PartitionGap,
    NotInSet,
    UnknownGallery,
    BadParams,
    OverlappingSupports,
    NotClopen,
    TooLong,
    BadAddress,
    InfiniteRange,
    IndexNotFinite,
    RangeError,
    InsufficientIndex,
    BudgetExceeded,
    Internal,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& what)
        : std::runtime_error(std::string(error_name(c)) + ": " + what), code_(c) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

std::string rat_str(const Rational& q);
Rational parse_rational(const std::string& s);
Rational rat_abs(const Rational& q);

}  // namespace ordlab
