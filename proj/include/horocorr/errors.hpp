#pragma once

#include <stdexcept>
#include <string>

namespace horocorr {

/// Invalid user input: bad configuration, unknown catalog id, malformed grid request.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition failed (off-model vector, pole of a formula,
/// degenerate immersion). The message names the offending point when one exists.
class MathDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension mismatch between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace horocorr
