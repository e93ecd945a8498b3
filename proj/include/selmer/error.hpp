#pragma once

#include <stdexcept>
#include <string>

namespace selmer {

enum class ErrorKind {
  invalid_form,
  overflow,
  dimension,
  invalid_class,
  not_in_catalog,
  baseline_failure,
  normalization,
  integrality,
  convergence,
  precondition,
  domain,
  range,
  insufficient_data,
  config,
  io,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}
  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace selmer
