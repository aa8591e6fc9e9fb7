#ifndef TSFORE_ERRORS_HPP
#define TSFORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tsfore {

/// Error identities thrown by the library. Every failure mode has its own
/// code so callers (and the CLI exit-code mapping) can tell them apart.
enum class ErrorCode {
    // input / contract violations
    MalformedRow,
    DuplicateDate,
    NonMonotonicDate,
    EmptyFile,
    GapWithoutPolicy,
    WindowTooLarge,
    DegenerateSplit,
    SeriesTooShort,
    LagTooLarge,
    TooFewRows,
    WidthMismatch,
    LengthMismatch,
    EmptyInput,
    ParamOutOfRange,
    FingerprintMismatch,
    // numeric failures
    ConstantSeries,
    NonPositiveValue,
    NonPositiveForMultiplicative,
    NumericalBreakdown,
    SingularRegression,
    RankDeficient,
    ConstantActual,
};

/// Exception carrying an ErrorCode plus a human-readable message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

/// True for errors caused by bad input (files, flags, sizes); false for
/// numeric failures arising from the data's values.
bool is_input_error(ErrorCode code);

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, std::string(error_code_name(code)) + ": " + message);
}

} // namespace tsfore

#endif // TSFORE_ERRORS_HPP
