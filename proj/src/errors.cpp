#include "tsfore/errors.hpp"

namespace tsfore {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedRow: return "MalformedRow";
        case ErrorCode::DuplicateDate: return "DuplicateDate";
        case ErrorCode::NonMonotonicDate: return "NonMonotonicDate";
        case ErrorCode::EmptyFile: return "EmptyFile";
        case ErrorCode::GapWithoutPolicy: return "GapWithoutPolicy";
        case ErrorCode::WindowTooLarge: return "WindowTooLarge";
        case ErrorCode::DegenerateSplit: return "DegenerateSplit";
        case ErrorCode::SeriesTooShort: return "SeriesTooShort";
        case ErrorCode::LagTooLarge: return "LagTooLarge";
        case ErrorCode::TooFewRows: return "TooFewRows";
        case ErrorCode::WidthMismatch: return "WidthMismatch";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
        case ErrorCode::FingerprintMismatch: return "FingerprintMismatch";
        case ErrorCode::ConstantSeries: return "ConstantSeries";
        case ErrorCode::NonPositiveValue: return "NonPositiveValue";
        case ErrorCode::NonPositiveForMultiplicative: return "NonPositiveForMultiplicative";
        case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
        case ErrorCode::SingularRegression: return "SingularRegression";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::ConstantActual: return "ConstantActual";
    }
    return "UnknownError";
}

bool is_input_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::ConstantSeries:
        case ErrorCode::NonPositiveValue:
        case ErrorCode::NonPositiveForMultiplicative:
        case ErrorCode::NumericalBreakdown:
        case ErrorCode::SingularRegression:
        case ErrorCode::RankDeficient:
        case ErrorCode::ConstantActual:
            return false;
        default:
            return true;
    }
}

} // namespace tsfore
