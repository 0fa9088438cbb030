#pragma once

#include <stdexcept>
#include <string>

namespace grh {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GRH_DEFINE_ERROR(Name)          \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  };

// interval
GRH_DEFINE_ERROR(InvalidInterval)
GRH_DEFINE_ERROR(DivisorContainsZero)
GRH_DEFINE_ERROR(NegativeSqrtDomain)
GRH_DEFINE_ERROR(LogDomain)
GRH_DEFINE_ERROR(NonPositiveRealPart)
// characters
GRH_DEFINE_ERROR(QTooSmall)
GRH_DEFINE_ERROR(NotPrimitive)
// hurwitz
GRH_DEFINE_ERROR(PoleProximity)
GRH_DEFINE_ERROR(DomainError)
GRH_DEFINE_ERROR(RadiusViolation)
// samplers
GRH_DEFINE_ERROR(RealnessViolation)
GRH_DEFINE_ERROR(TailDivergence)
GRH_DEFINE_ERROR(XConditionViolated)
GRH_DEFINE_ERROR(BetaConditionViolated)
// upsample
GRH_DEFINE_ERROR(WindowUnderflow)
GRH_DEFINE_ERROR(GeometricRatioNotDecreasing)
// turing
GRH_DEFINE_ERROR(QuadratureNotTight)
GRH_DEFINE_ERROR(HypothesisViolated)
GRH_DEFINE_ERROR(CertificationFailed)
// oracle
GRH_DEFINE_ERROR(IndeterminateSign)
// driver
GRH_DEFINE_ERROR(ConfigError)

#undef GRH_DEFINE_ERROR

/// Malformed certificate or cache file; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace grh
