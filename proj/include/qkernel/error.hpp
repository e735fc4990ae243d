#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qkernel {

enum class ErrorKind {
  capacity,
  index,
  dimension,
  argument,
  normalization,
  configuration,
  degenerate_data,
  degenerate_feature,
  input,
  parse,
  label_cardinality,
  stratification,
  generation_exhausted,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::index: return "index";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::argument: return "argument";
    case ErrorKind::normalization: return "normalization";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::degenerate_data: return "degenerate-data";
    case ErrorKind::degenerate_feature: return "degenerate-feature";
    case ErrorKind::input: return "input";
    case ErrorKind::parse: return "parse";
    case ErrorKind::label_cardinality: return "label-cardinality";
    case ErrorKind::stratification: return "stratification";
    case ErrorKind::generation_exhausted: return "generation-exhausted";
  }
  return "unknown";
}

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qkernel
