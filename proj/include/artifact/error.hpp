#ifndef ARTIFACT_ERROR_HPP
#define ARTIFACT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace artifact {

enum class ErrorKind {
  ParseError,
  UnsupportedLimit,
  OutOfNotation,
  UnsupportedSeparation,
  UnsupportedClassification,
  UnsupportedOtp,
  UnsupportedDecomposition,
  NotConnected,
  NotTypeOmega,
  NoUniqueIndex,
  MalformedElement,
  MalformedTerm,
  BudgetExceeded,
  EnumerationShortfall,
  GuardViolation,
  DepthExceeded,
  Usage,
};

const char* error_kind_name(ErrorKind k);

// True for the errors that mark the edge of the supported fragment
// (CLI exit code 2).
bool is_unsupported(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace artifact

#endif
