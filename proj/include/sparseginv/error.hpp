#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sparseginv {

/// Error taxonomy shared by every module and surfaced verbatim by the CLI.
enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    Singular,
    ZeroMatrix,
    SingularSelection,
    RankMismatch,
    NotRankOne,
    NotRankTwo,
    NotSignNormalizable,
    NotConverged,
    ObjectiveMismatch,
    IterationLimit,
    Infeasible,
    ParseError,
    DimensionError,
};

constexpr std::string_view error_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::SingularSelection: return "SingularSelection";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotRankOne: return "NotRankOne";
    case ErrorCode::NotRankTwo: return "NotRankTwo";
    case ErrorCode::NotSignNormalizable: return "NotSignNormalizable";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ObjectiveMismatch: return "ObjectiveMismatch";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionError: return "DimensionError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

/// Parse failure carrying a 1-based source position (column 0 when unknown).
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace sparseginv
