#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdt {

enum class ErrorKind {
  Domain,
  Weight,
  UnsupportedWeights,
  NonInvertibleDerivative,
  NonInvertibleRatio,
  NonInvertibleGradient,
  Order,
  Convexity,
  Derivative,
  LengthMismatch,
  KindMismatch,
  QuadratureFailure,
  Dominance,
  Param,
  DegenerateCluster,
  Parse,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this type; `kind()` is the
// machine-readable tag the CLI forwards in its error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace cdt
