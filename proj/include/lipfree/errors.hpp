#pragma once

#include <stdexcept>
#include <string>

namespace lipfree {

// Malformed documents: bad JSON shape, unknown labels, unparseable rationals.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration or instance size beyond a configured cap.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation that needs a convex series of molecules was handed a family
// that violates cyclical monotonicity.
struct NotAttainingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Broken internal invariant or a certificate that failed re-verification.
// Always a bug, never bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace lipfree
