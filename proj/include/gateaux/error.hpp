#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gateaux {

enum class ErrorCode {
    MalformedPoint,
    SpaceMismatch,
    EvalFailure,
    NonconvergentPerturbation,
    DegeneratePair,
    NotInComplement,
    NoDoubleMax,
    PreconditionFailed,
    NonpositiveVariance,
    QuadratureNonconverged,
    BadDims,
    DimTooSmall,
    NonconstancyUnverified,
    BadGrid,
};

std::string_view to_string(ErrorCode code);

/// Every module reports failures through this type; `code()` is stable and
/// serialized by the CLI.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace gateaux
