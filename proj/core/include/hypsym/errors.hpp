#pragma once

#include <stdexcept>
#include <string>

namespace hypsym {

// Root of every error thrown by the library. Each subclass corresponds to a
// named failure of one operation; callers that only care about "something
// went wrong" can catch Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HYPSYM_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

HYPSYM_DEFINE_ERROR(DimensionMismatch);
HYPSYM_DEFINE_ERROR(NotInVectorSpace);
HYPSYM_DEFINE_ERROR(NotInCliffordGroup);
HYPSYM_DEFINE_ERROR(MembershipFailure);
HYPSYM_DEFINE_ERROR(UnsupportedVariant);
HYPSYM_DEFINE_ERROR(NonCoprime);
HYPSYM_DEFINE_ERROR(SingularBasis);
HYPSYM_DEFINE_ERROR(InvalidDescriptor);
HYPSYM_DEFINE_ERROR(NotInGroup);
HYPSYM_DEFINE_ERROR(DecompositionFailed);
HYPSYM_DEFINE_ERROR(ConjugateNotIntegral);
HYPSYM_DEFINE_ERROR(ParseError);
HYPSYM_DEFINE_ERROR(BoundViolation);
HYPSYM_DEFINE_ERROR(InsufficientCoefficients);
HYPSYM_DEFINE_ERROR(LevelMismatch);
HYPSYM_DEFINE_ERROR(ParityLeak);
HYPSYM_DEFINE_ERROR(LatticeDetectionFailed);
HYPSYM_DEFINE_ERROR(ReconstructionFailed);
HYPSYM_DEFINE_ERROR(DenominatorDivisibleByP);
HYPSYM_DEFINE_ERROR(ConvergenceRegion);
HYPSYM_DEFINE_ERROR(DomainError);
HYPSYM_DEFINE_ERROR(EmptySample);
HYPSYM_DEFINE_ERROR(ConfigError);

#undef HYPSYM_DEFINE_ERROR

}  // namespace hypsym
