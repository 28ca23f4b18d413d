#pragma once

#include <stdexcept>
#include <string>

namespace sovxxz {

/// Base class of every failure raised by the library. Each pipeline stage
/// throws a distinct subclass so callers can tell numerical breakdown apart
/// from invalid input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define SOVXXZ_DECLARE_ERROR(Name)                                \
  class Name : public Error {                                     \
   public:                                                        \
    using Error::Error;                                           \
    const char* kind() const noexcept override { return #Name; } \
  }

// trigpoly
SOVXXZ_DECLARE_ERROR(DegenerateNodes);
SOVXXZ_DECLARE_ERROR(NotFullDegree);
SOVXXZ_DECLARE_ERROR(ScaleMismatch);
SOVXXZ_DECLARE_ERROR(ParityMismatch);

// qalgebra
SOVXXZ_DECLARE_ERROR(InvalidModel);
SOVXXZ_DECLARE_ERROR(IndexOutOfRange);

// sovbasis
SOVXXZ_DECLARE_ERROR(ConditioningFailure);

// spectrum
SOVXXZ_DECLARE_ERROR(DegenerateSpectrum);
SOVXXZ_DECLARE_ERROR(RecursionBlowup);
SOVXXZ_DECLARE_ERROR(ZeroState);

// tq-inhom
SOVXXZ_DECLARE_ERROR(ExceptionalAlpha);
SOVXXZ_DECLARE_ERROR(NonAdmissible);
SOVXXZ_DECLARE_ERROR(PoleAtXi);

// tq-hom
SOVXXZ_DECLARE_ERROR(RankDeficient);
SOVXXZ_DECLARE_ERROR(NoEpsilonFits);
SOVXXZ_DECLARE_ERROR(NotEntire);
SOVXXZ_DECLARE_ERROR(CoincidentRoots);
SOVXXZ_DECLARE_ERROR(BothChoicesZero);

// harness
SOVXXZ_DECLARE_ERROR(ConfigError);
SOVXXZ_DECLARE_ERROR(GenerationExhausted);

#undef SOVXXZ_DECLARE_ERROR

}  // namespace sovxxz
