#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gfwords {

enum class Errc {
    NonPrimeP,
    ReducibleModulus,
    DegreeMismatch,
    UnsupportedField,
    BadIndex,
    DivisionByZero,
    FieldMismatch,
    NotUnimodular,
    NotInA,
    NotInC,
    PatternMismatch,
    EmptyWord,
    InvalidFactorization,
    BudgetExceeded,
    EmptyBlock,
    NotAnMpcs,
    ShapeMismatch,
    UnsupportedDimension,
    BadDegree,
    BadRange,
    ParseError,
};

constexpr std::string_view errc_name(Errc e) noexcept {
    switch (e) {
    case Errc::NonPrimeP: return "NonPrimeP";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::BadIndex: return "BadIndex";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NotUnimodular: return "NotUnimodular";
    case Errc::NotInA: return "NotInA";
    case Errc::NotInC: return "NotInC";
    case Errc::PatternMismatch: return "PatternMismatch";
    case Errc::EmptyWord: return "EmptyWord";
    case Errc::InvalidFactorization: return "InvalidFactorization";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::EmptyBlock: return "EmptyBlock";
    case Errc::NotAnMpcs: return "NotAnMpcs";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::UnsupportedDimension: return "UnsupportedDimension";
    case Errc::BadDegree: return "BadDegree";
    case Errc::BadRange: return "BadRange";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library. The code is what callers branch on;
/// the message is for humans.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace gfwords
