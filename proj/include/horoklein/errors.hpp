#pragma once

#include <stdexcept>

namespace horoklein {

// Malformed or semantically invalid user input (files, parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerically out-of-domain data: non-interior cone vectors, discriminants
// past the clamp window, infeasible gauge brackets.
class NumericError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace horoklein
