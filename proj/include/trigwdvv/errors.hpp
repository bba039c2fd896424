#pragma once

#include <stdexcept>
#include <string>

namespace trigwdvv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TRIGWDVV_DEFINE_ERROR(Name)     \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  };

// rootsystems
TRIGWDVV_DEFINE_ERROR(InadmissibleRank)
TRIGWDVV_DEFINE_ERROR(ZeroRoot)
TRIGWDVV_DEFINE_ERROR(NonCrystallographic)
TRIGWDVV_DEFINE_ERROR(NoConvergence)
TRIGWDVV_DEFINE_ERROR(NotABase)
// exactform
TRIGWDVV_DEFINE_ERROR(MultiplicityOrbitMismatch)
TRIGWDVV_DEFINE_ERROR(DegenerateRank)
// prepotential
TRIGWDVV_DEFINE_ERROR(DomainError)
TRIGWDVV_DEFINE_ERROR(NearSingular)
TRIGWDVV_DEFINE_ERROR(ChamberViolation)
TRIGWDVV_DEFINE_ERROR(StepTooLarge)
TRIGWDVV_DEFINE_ERROR(SamplingExhausted)
// wdvv
TRIGWDVV_DEFINE_ERROR(NonPositiveC)
TRIGWDVV_DEFINE_ERROR(SingularPivot)
// cli / config
TRIGWDVV_DEFINE_ERROR(UsageError)

#undef TRIGWDVV_DEFINE_ERROR

}  // namespace trigwdvv
