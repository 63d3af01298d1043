#pragma once

#include <stdexcept>
#include <string>

namespace qdskit {

enum class ErrorCode {
    DivisionByNonUnit,
    DimensionMismatch,
    NonUnitConstantTerm,
    UnknownVariable,
    EmptyWeights,
    FirstWeightNotOne,
    PrimitiveHypothesisFails,
    SingularPairing,
    NonResonanceViolated,
    TerminationBoundExceeded,
    PairingNotAdapted,
    NotFlat,
    NonPositiveArgument,
    VectorsDoNotSpan,
    ExponentOutOfRange,
    DegeneratePairing,
    ParseError,
    RingMismatch,
};

const char* error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (tests, CLI) can dispatch on the kind rather than on message text.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace qdskit
