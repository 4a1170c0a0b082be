#pragma once

#include <stdexcept>
#include <string>

namespace mdeg {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define MDEG_DEFINE_ERROR(Name)                                                \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    }

MDEG_DEFINE_ERROR(DimensionMismatch);
MDEG_DEFINE_ERROR(LengthMismatch);
MDEG_DEFINE_ERROR(NonPrimitiveVector);
MDEG_DEFINE_ERROR(ZeroVector);
MDEG_DEFINE_ERROR(LowerDimensional);
MDEG_DEFINE_ERROR(EmptyTuple);
MDEG_DEFINE_ERROR(TooFewPolytopes);
MDEG_DEFINE_ERROR(ParallelDirections);
MDEG_DEFINE_ERROR(PreconditionViolation);
MDEG_DEFINE_ERROR(InternalInvariantViolation);
MDEG_DEFINE_ERROR(Overflow);
MDEG_DEFINE_ERROR(SeedInvalid);
MDEG_DEFINE_ERROR(DependencyMissing);
MDEG_DEFINE_ERROR(CoverageGap);
MDEG_DEFINE_ERROR(CounterexampleFound);
MDEG_DEFINE_ERROR(ParseError);
MDEG_DEFINE_ERROR(IoError);

#undef MDEG_DEFINE_ERROR

} // namespace mdeg
