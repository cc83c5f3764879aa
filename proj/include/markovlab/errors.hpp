#ifndef MARKOVLAB_ERRORS_HPP
#define MARKOVLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace markovlab {

// How a failure should surface at the process boundary (CLI exit codes).
enum class ErrorCategory {
  Io,          // exit 1: parse / file errors
  Validation,  // exit 2: malformed inputs, broken invariants
  Verdict      // exit 3: a negative scientific verdict, not a crash
};

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg,
        ErrorCategory category = ErrorCategory::Validation)
      : std::runtime_error(kind + ": " + msg),
        kind_(std::move(kind)),
        category_(category) {}

  const std::string& kind() const { return kind_; }
  ErrorCategory category() const { return category_; }

 private:
  std::string kind_;
  ErrorCategory category_;
};

#define MARKOVLAB_DEFINE_ERROR(Name, Category)                        \
  struct Name : Error {                                               \
    explicit Name(const std::string& msg)                             \
        : Error(#Name, msg, ErrorCategory::Category) {}               \
  }

MARKOVLAB_DEFINE_ERROR(DimensionError, Validation);
MARKOVLAB_DEFINE_ERROR(DimensionCap, Validation);
MARKOVLAB_DEFINE_ERROR(LabelError, Validation);
MARKOVLAB_DEFINE_ERROR(HermiticityError, Validation);
MARKOVLAB_DEFINE_ERROR(ConvergenceError, Validation);
MARKOVLAB_DEFINE_ERROR(NotPSD, Validation);
MARKOVLAB_DEFINE_ERROR(NotUnitTrace, Validation);
MARKOVLAB_DEFINE_ERROR(SingularError, Validation);
MARKOVLAB_DEFINE_ERROR(DegenerateError, Validation);
MARKOVLAB_DEFINE_ERROR(RankError, Validation);
MARKOVLAB_DEFINE_ERROR(MarginalMismatch, Validation);
MARKOVLAB_DEFINE_ERROR(NotAState, Verdict);
MARKOVLAB_DEFINE_ERROR(ZeroProbability, Validation);
MARKOVLAB_DEFINE_ERROR(SingularGram, Validation);
MARKOVLAB_DEFINE_ERROR(ZeroMap, Validation);
MARKOVLAB_DEFINE_ERROR(SimplexError, Validation);
MARKOVLAB_DEFINE_ERROR(DegenerateInput, Validation);
MARKOVLAB_DEFINE_ERROR(GridError, Validation);
MARKOVLAB_DEFINE_ERROR(IoError, Io);

#undef MARKOVLAB_DEFINE_ERROR

// Raised when an operation that requires a Markov state gets a non-Markov
// one; carries the offending conditional mutual information (bits).
struct NotMarkov : Error {
  NotMarkov(const std::string& msg, double cmi_bits)
      : Error("NotMarkov", msg, ErrorCategory::Verdict), cmi_bits(cmi_bits) {}
  double cmi_bits;
};

}  // namespace markovlab

#endif
