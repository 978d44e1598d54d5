#include "ordlab/common.hpp"

#include <cctype>

namespace ordlab {

const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::Parse: return "ParseError";
        case ErrorCode::NonCanonical: return "NonCanonical";
        case ErrorCode::DepthExceeded: return "DepthExceeded";
        case ErrorCode::NotLimit: return "NotLimit";
        case ErrorCode::OutOfSpace: return "OutOfSpace";
        case ErrorCode::SpaceMismatch: return "SpaceMismatch";
        case ErrorCode::PartitionGap: return "PartitionGap";
        case ErrorCode::NotInSet: return "NotInSet";
        case ErrorCode::UnknownGallery: return "UnknownGallery";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::OverlappingSupports: return "OverlappingSupports";
        case ErrorCode::NotClopen: return "NotClopen";
        case ErrorCode::TooLong: return "TooLong";
        case ErrorCode::BadAddress: return "BadAddress";
        case ErrorCode::InfiniteRange: return "InfiniteRange";
        case ErrorCode::IndexNotFinite: return "IndexNotFinite";
        case ErrorCode::RangeError: return "RangeError";
        case ErrorCode::InsufficientIndex: return "InsufficientIndex";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

std::string rat_str(const Rational& q) {
    if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

Rational parse_rational(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    auto digits = [&](const std::string& t, bool sign_ok) {
        if (t.empty()) return false;
        size_t i = (sign_ok && t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!digits(s, true)) throw Error(ErrorCode::Parse, "bad rational '" + raw + "'");
        return Rational(BigInt(s));
    }
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!digits(n, true) || !digits(d, false)) throw Error(ErrorCode::Parse, "bad rational '" + raw + "'");
    BigInt den(d);
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator");
    return Rational(BigInt(n), den);
}

Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace ordlab
