#pragma once

#include <stdexcept>
#include <string>

namespace srl {

// Base class for all library errors.  Each error carries a stable machine
// readable code (used by the CLI when emitting error records) together with a
// human readable message.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

#define SRL_DEFINE_ERROR(NAME)                                        \
  class NAME : public Error {                                         \
  public:                                                             \
    explicit NAME(const std::string& message) : Error(#NAME, message) {} \
  }

// algebra
SRL_DEFINE_ERROR(InvalidScalar);
SRL_DEFINE_ERROR(FieldMismatch);
SRL_DEFINE_ERROR(SingularMatrix);
SRL_DEFINE_ERROR(OrderCapExceeded);
SRL_DEFINE_ERROR(NotSemisimple);

// atlas / constructions
SRL_DEFINE_ERROR(UnsupportedSpec);
SRL_DEFINE_ERROR(InvalidFamilyParams);
SRL_DEFINE_ERROR(GeneratorValidationFailed);
SRL_DEFINE_ERROR(NotIsotropicPair);
SRL_DEFINE_ERROR(IsotropicAxis);
SRL_DEFINE_ERROR(PreconditionViolated);
SRL_DEFINE_ERROR(ActionTooLarge);

// permutation engine / conjugacy
SRL_DEFINE_ERROR(DegreeCapExceeded);
SRL_DEFINE_ERROR(ClassTooLarge);
SRL_DEFINE_ERROR(RadicalInfeasible);
SRL_DEFINE_ERROR(SubgroupOrbitTooLarge);
SRL_DEFINE_ERROR(GeneratingPairNotFound);

// verification / counting
SRL_DEFINE_ERROR(Infeasible);
SRL_DEFINE_ERROR(NotApplicable);

// parsing / IO
SRL_DEFINE_ERROR(ParseError);
SRL_DEFINE_ERROR(IoError);

#undef SRL_DEFINE_ERROR

}  // namespace srl
