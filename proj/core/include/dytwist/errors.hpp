#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dytwist {

enum class ErrorCode {
  kPoleProximity,
  kQuadratureFailure,
  kZeroOrPole,
  kNotRepresentable,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base class of every error raised by the library. Callers that scan
/// parameter space catch this and record the code as a skip.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// An argument lies within the pole-guard radius of a Gamma (or matrix) pole.
class PoleProximity : public Error {
 public:
  explicit PoleProximity(const std::string& what)
      : Error(ErrorCode::kPoleProximity, what) {}

 protected:
  PoleProximity(ErrorCode code, const std::string& what) : Error(code, what) {}
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureFailure : public Error {
 public:
  explicit QuadratureFailure(const std::string& what)
      : Error(ErrorCode::kQuadratureFailure, what) {}
};

/// Argument of the double sine sits on its zero/pole lattice. A special
/// case of PoleProximity so scans can treat both alike.
class ZeroOrPole : public PoleProximity {
 public:
  explicit ZeroOrPole(const std::string& what)
      : PoleProximity(ErrorCode::kZeroOrPole, what) {}
};

/// Requested configuration has no finite-dimensional evaluation (c != 0).
class NotRepresentable : public Error {
 public:
  explicit NotRepresentable(const std::string& what)
      : Error(ErrorCode::kNotRepresentable, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

}  // namespace dytwist
