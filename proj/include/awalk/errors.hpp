#pragma once

#include <stdexcept>
#include <string>

namespace awalk {

// Thrown when an exact computation would exceed its configured size cap
// (memory-bounded evolution, level enumeration, projection modulus, ...).
// The CLI maps this to exit code 3.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace awalk
