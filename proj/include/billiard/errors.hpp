#ifndef BILLIARD_ERRORS_HPP
#define BILLIARD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace billiard {

// Error categories map to CLI exit codes: validation=1, solver=2, fit=3.
enum class ErrorCategory { kValidation = 1, kSolver = 2, kFit = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory cat, const std::string& name, const std::string& msg)
      : std::runtime_error(name + ": " + msg), cat_(cat), name_(name) {}
  ErrorCategory category() const { return cat_; }
  const std::string& name() const { return name_; }

 private:
  ErrorCategory cat_;
  std::string name_;
};

#define BILLIARD_DEFINE_ERROR(NAME, CAT)                          \
  class NAME : public Error {                                    \
   public:                                                        \
    explicit NAME(const std::string& msg)                         \
        : Error(ErrorCategory::CAT, #NAME, msg) {}                \
  }

BILLIARD_DEFINE_ERROR(InvalidTable, kValidation);
BILLIARD_DEFINE_ERROR(InvalidConfig, kValidation);
BILLIARD_DEFINE_ERROR(InvalidCode, kValidation);
BILLIARD_DEFINE_ERROR(DegenerateChord, kValidation);
BILLIARD_DEFINE_ERROR(NearUnitLambda, kValidation);

BILLIARD_DEFINE_ERROR(GluingHit, kSolver);
BILLIARD_DEFINE_ERROR(TangentialShot, kSolver);
BILLIARD_DEFINE_ERROR(InfeasibleChord, kSolver);
BILLIARD_DEFINE_ERROR(InfeasibleOrbit, kSolver);
BILLIARD_DEFINE_ERROR(NoConvergence, kSolver);
BILLIARD_DEFINE_ERROR(NotHyperbolic, kSolver);
BILLIARD_DEFINE_ERROR(OrbitBifurcation, kSolver);

BILLIARD_DEFINE_ERROR(InsufficientDecayWindow, kFit);
BILLIARD_DEFINE_ERROR(ParityMismatch, kFit);
BILLIARD_DEFINE_ERROR(FitUnstable, kFit);
BILLIARD_DEFINE_ERROR(NoRealRoot, kFit);

#undef BILLIARD_DEFINE_ERROR

}  // namespace billiard

#endif
