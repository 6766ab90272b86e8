#pragma once

#include <stdexcept>
#include <string>

namespace fuselab {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input documents, invalid tables, bad CLI arguments.
struct validation_error : error {
  using error::error;
};

// A configured cap (order, Sylow size, subgroup count) was exceeded.
struct size_guard_error : error {
  using error::error;
};

// An operation was called outside its contract (containment, normality, ...).
struct precondition_error : error {
  using error::error;
};

// A theorem hypothesis does not hold for the given instance.
struct hypothesis_violation : error {
  using error::error;
};

// A verified conclusion failed; this falsifies the implementation, never ignored.
struct theorem_violation : error {
  using error::error;
};

// A construction whose defining properties are re-checked at runtime failed its check.
struct construction_unverified : error {
  using error::error;
};

// Alperin decomposition could not complete; signals an unsaturated input or a bug.
struct decomposition_error : error {
  using error::error;
};

}  // namespace fuselab
