#pragma once

#include <stdexcept>
#include <string>

namespace tmpk {

// Input text that cannot be parsed (graph files, .td files, result documents).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance larger than the configured cap of an exact solver.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search ran out of its step budget before the space was exhausted.
// Distinct from a completed search that found nothing.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A consistency check on internally produced data failed; indicates a bug
// in the library, never bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace tmpk
