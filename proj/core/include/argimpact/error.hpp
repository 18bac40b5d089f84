#pragma once

#include <stdexcept>

namespace argimpact {

/// Malformed or inconsistent input data (corpus files, lexicons, checkpoints).
/// The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure during training (divergent loss, non-finite gradients).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace argimpact
