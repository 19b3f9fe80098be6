#pragma once

#include <stdexcept>
#include <string>

namespace berklab {

// Base class for all domain errors. `code()` is a stable machine-readable
// identifier used by the CLI when emitting error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define BERKLAB_DEFINE_ERROR(Name)                          \
    class Name : public Error {                             \
    public:                                                 \
        explicit Name(const std::string& message)           \
            : Error(#Name, message) {}                      \
    }

BERKLAB_DEFINE_ERROR(ZeroPolynomial);
BERKLAB_DEFINE_ERROR(InvalidProjectivePoint);
BERKLAB_DEFINE_ERROR(NotNormalized);
BERKLAB_DEFINE_ERROR(SingularMatrix);
BERKLAB_DEFINE_ERROR(DegenerateLift);
BERKLAB_DEFINE_ERROR(DiskContainsZeroAndPole);
BERKLAB_DEFINE_ERROR(IdenticallyEqual);
BERKLAB_DEFINE_ERROR(ExceptionalBasePoint);
BERKLAB_DEFINE_ERROR(TreeMismatch);
BERKLAB_DEFINE_ERROR(InsufficientResolution);
BERKLAB_DEFINE_ERROR(ToleranceUnreachable);
BERKLAB_DEFINE_ERROR(ParseError);
BERKLAB_DEFINE_ERROR(FieldMismatch);

#undef BERKLAB_DEFINE_ERROR

} // namespace berklab
