#pragma once

#include <stdexcept>
#include <string>

namespace grassmann {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GRASSMANN_DEFINE_ERROR(Name)          \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

GRASSMANN_DEFINE_ERROR(ParseError);
GRASSMANN_DEFINE_ERROR(GradeError);
GRASSMANN_DEFINE_ERROR(DimensionError);
GRASSMANN_DEFINE_ERROR(NormalizationError);
GRASSMANN_DEFINE_ERROR(RankError);
GRASSMANN_DEFINE_ERROR(DecomposabilityError);
GRASSMANN_DEFINE_ERROR(ValidationError);
GRASSMANN_DEFINE_ERROR(ContainmentError);
GRASSMANN_DEFINE_ERROR(EpsilonExhausted);
GRASSMANN_DEFINE_ERROR(DegenerateError);
GRASSMANN_DEFINE_ERROR(UnboundedError);
GRASSMANN_DEFINE_ERROR(DomainError);
GRASSMANN_DEFINE_ERROR(GluingError);
GRASSMANN_DEFINE_ERROR(StarConvexityViolation);
GRASSMANN_DEFINE_ERROR(ToleranceError);

#undef GRASSMANN_DEFINE_ERROR

}  // namespace grassmann
