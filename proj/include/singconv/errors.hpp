#ifndef SINGCONV_ERRORS_HPP
#define SINGCONV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace singconv {

// Exit-code families used by the CLI: input errors map to 2, algebraic
// errors (failed divisions and the like) to 3, verification failures to 4.

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// newton
struct EmptyGerm : InputError { EmptyGerm() : InputError("germ has no terms") {} };
struct NotConvenient : InputError { using InputError::InputError; };
struct FaceMismatch : InputError { using InputError::InputError; };
struct BadPrime : InputError { using InputError::InputError; };
struct TooLarge : InputError { using InputError::InputError; };
struct OriginInPolytope : InputError {
  OriginInPolytope() : InputError("origin lies in the Newton polyhedron") {}
};

// fans
struct PropertyViolation : AlgebraError { using AlgebraError::AlgebraError; };
struct ZeroRay : InputError { ZeroRay() : InputError("zero ray has no primitive generator") {} };
struct UnboundedBelow : InputError { using InputError::InputError; };
struct NoInteriorRays : AlgebraError { using AlgebraError::AlgebraError; };
struct NonSimplicialInput : InputError { using InputError::InputError; };
struct MalformedFan : InputError { using InputError::InputError; };

// ghodge
struct GroupMismatch : InputError { using InputError::InputError; };
struct BadSelector : InputError { using InputError::InputError; };
struct NotASubgroup : InputError { using InputError::InputError; };
struct NotDivisible : AlgebraError { using AlgebraError::AlgebraError; };
struct NotDivisor : InputError { using InputError::InputError; };
struct NoMonodromyFactor : InputError { using InputError::InputError; };

// bases / convolve
struct UnsupportedArity : InputError { using InputError::InputError; };
struct ParseError : InputError { using InputError::InputError; };
struct MissingRegistryEntry : InputError { using InputError::InputError; };
struct MismatchReport : VerificationFailure { using VerificationFailure::VerificationFailure; };

// fforacle
struct NotDividing : InputError { using InputError::InputError; };
struct TamenessViolation : VerificationFailure { using VerificationFailure::VerificationFailure; };
struct PreconditionViolation : InputError { using InputError::InputError; };

}  // namespace singconv

#endif
