#pragma once

#include <stdexcept>
#include <string>

namespace mre {

/// Input errors are caller mistakes (bad shapes, bad files, bad flags).
/// Numerical errors mean the math has no answer for the given data.
enum class ErrorCategory { Input, Numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

#define MRE_DEFINE_ERROR(Name, Category)                                   \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(Category, #Name ": " + what) {} \
  }

MRE_DEFINE_ERROR(DimensionMismatch, ErrorCategory::Input);
MRE_DEFINE_ERROR(NonHermitianInput, ErrorCategory::Input);
MRE_DEFINE_ERROR(InvalidState, ErrorCategory::Input);
MRE_DEFINE_ERROR(InvalidRank, ErrorCategory::Input);
MRE_DEFINE_ERROR(InvalidBlockRanks, ErrorCategory::Input);
MRE_DEFINE_ERROR(InvalidDecomposition, ErrorCategory::Input);
MRE_DEFINE_ERROR(InvalidArgument, ErrorCategory::Input);
MRE_DEFINE_ERROR(LengthMismatch, ErrorCategory::Input);
MRE_DEFINE_ERROR(NotNormalized, ErrorCategory::Input);
MRE_DEFINE_ERROR(NotCommuting, ErrorCategory::Input);
MRE_DEFINE_ERROR(InfeasiblePoint, ErrorCategory::Input);
MRE_DEFINE_ERROR(ParseError, ErrorCategory::Input);
MRE_DEFINE_ERROR(ConfigError, ErrorCategory::Input);
MRE_DEFINE_ERROR(IoError, ErrorCategory::Input);

MRE_DEFINE_ERROR(DomainError, ErrorCategory::Numerical);
MRE_DEFINE_ERROR(NumericalError, ErrorCategory::Numerical);
MRE_DEFINE_ERROR(SingularState, ErrorCategory::Numerical);
MRE_DEFINE_ERROR(UndefinedDirection, ErrorCategory::Numerical);
MRE_DEFINE_ERROR(ZeroProbabilityOutcome, ErrorCategory::Numerical);
MRE_DEFINE_ERROR(DegenerateConstraint, ErrorCategory::Numerical);
MRE_DEFINE_ERROR(ZeroEvidence, ErrorCategory::Numerical);

#undef MRE_DEFINE_ERROR

}  // namespace mre
