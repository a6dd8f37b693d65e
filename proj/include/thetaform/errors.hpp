#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace thetaform {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable tag, used as the "kind" of CLI error objects.
  virtual const char* kind() const noexcept { return "error"; }
};

class NotADivergence : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "not_a_divergence"; }
};

class InhomogeneousSuperDegree : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "inhomogeneous_super_degree"; }
};

class NotACocycle : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "not_a_cocycle"; }
};

/// A solver system the cohomology computation says must be feasible was not.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "internal_inconsistency"; }
};

class NonstandardLeadingTerm : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "nonstandard_leading_term"; }
};

class JacobiViolation : public Error {
 public:
  JacobiViolation(int degree, const std::string& what) : Error(what), degree_(degree) {}
  int degree() const noexcept { return degree_; }
  const char* kind() const noexcept override { return "jacobi_violation"; }

 private:
  int degree_;
};

/// A nonzero Bockstein class survived at the given degree.
class ObstructionNonzeroBockstein : public Error {
 public:
  ObstructionNonzeroBockstein(int degree, std::string chi, const std::string& what)
      : Error(what), degree_(degree), chi_(std::move(chi)) {}
  int degree() const noexcept { return degree_; }
  /// Reduced class representative in DSL syntax.
  const std::string& chi() const noexcept { return chi_; }
  const char* kind() const noexcept override { return "obstruction_nonzero_bockstein"; }

 private:
  int degree_;
  std::string chi_;
};

class NonconstantInvariant : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "nonconstant_invariant"; }
};

class MissingComponent : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "missing_component"; }
};

class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }
  const char* kind() const noexcept override { return "parse_error"; }

 private:
  int line_;
  int col_;
};

class DegreeMismatch : public ParseError {
 public:
  using ParseError::ParseError;
  const char* kind() const noexcept override { return "degree_mismatch"; }
};

class OddPower : public ParseError {
 public:
  using ParseError::ParseError;
  const char* kind() const noexcept override { return "odd_power"; }
};

}  // namespace thetaform
