#pragma once

#include <stdexcept>
#include <string>

namespace rainbow {

// Input violates a documented precondition (malformed template, inadmissible
// system, mismatched partitions, ...). The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Instance exceeds the size an exact routine is allowed to attempt.
// The CLI maps this to exit code 3.
class ScaleGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

inline void require_scale(bool cond, const std::string& what) {
  if (!cond) throw ScaleGuardError(what);
}

}  // namespace rainbow
