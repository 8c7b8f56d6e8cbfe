#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prelie {

// Malformed input: bad tree codes, schema violations, mismatched documents.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text that failed to parse; `pos` is the byte offset of the offending token.
struct parse_error : input_error {
  parse_error(const std::string& what, std::size_t pos_)
      : input_error(what + " (at position " + std::to_string(pos_) + ")"),
        pos(pos_) {}
  std::size_t pos;
};

// Document does not match one of the JSON schemas.
struct schema_error : input_error {
  using input_error::input_error;
};

// Resource guard tripped (enumeration order above the configured cap).
struct cap_error : input_error {
  using input_error::input_error;
};

// A mathematical precondition is violated: non-invertible series,
// valuation too small for exact mode, zero lambda.
struct math_error : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace prelie
