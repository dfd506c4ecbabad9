#pragma once

#include <stdexcept>
#include <string>

namespace quasiwave {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QUASIWAVE_ERROR(Name)                         \
    class Name : public Error {                       \
    public:                                           \
        explicit Name(const std::string& what)        \
            : Error(std::string(#Name ": ") + what) {} \
    }

QUASIWAVE_ERROR(ParameterOutOfRange);
QUASIWAVE_ERROR(DivisionByZero);
QUASIWAVE_ERROR(FieldMismatch);
QUASIWAVE_ERROR(NotABetaInteger);
QUASIWAVE_ERROR(OutOfWindow);
QUASIWAVE_ERROR(SequenceTooShort);
QUASIWAVE_ERROR(RangeError);
QUASIWAVE_ERROR(RepeatedNode);
QUASIWAVE_ERROR(ZeroIntegral);
QUASIWAVE_ERROR(SupportError);
QUASIWAVE_ERROR(SingularSystem);
QUASIWAVE_ERROR(NotInSpan);
QUASIWAVE_ERROR(WindowTooSmall);
QUASIWAVE_ERROR(WindowMismatch);
QUASIWAVE_ERROR(ParseError);
// Raised when an internal cross-check between two independent routes fails.
QUASIWAVE_ERROR(ConsistencyError);

#undef QUASIWAVE_ERROR

}  // namespace quasiwave
