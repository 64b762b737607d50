#include "gateaux/error.hpp"

namespace gateaux {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedPoint: return "MALFORMED_POINT";
        case ErrorCode::SpaceMismatch: return "SPACE_MISMATCH";
        case ErrorCode::EvalFailure: return "EVAL_FAILURE";
        case ErrorCode::NonconvergentPerturbation: return "NONCONVERGENT_PERTURBATION";
        case ErrorCode::DegeneratePair: return "DEGENERATE_PAIR";
        case ErrorCode::NotInComplement: return "NOT_IN_COMPLEMENT";
        case ErrorCode::NoDoubleMax: return "NO_DOUBLE_MAX";
        case ErrorCode::PreconditionFailed: return "PRECONDITION_FAILED";
        case ErrorCode::NonpositiveVariance: return "NONPOSITIVE_VARIANCE";
        case ErrorCode::QuadratureNonconverged: return "QUADRATURE_NONCONVERGED";
        case ErrorCode::BadDims: return "BAD_DIMS";
        case ErrorCode::DimTooSmall: return "DIM_TOO_SMALL";
        case ErrorCode::NonconstancyUnverified: return "NONCONSTANCY_UNVERIFIED";
        case ErrorCode::BadGrid: return "BAD_GRID";
    }
    return "UNKNOWN";
}

}  // namespace gateaux
