#pragma once

#include <stdexcept>

namespace fqlga {

// A computation was well-posed in principle but the numbers make it meaningless:
// degenerate spectrum, zero-mass or constant density profile.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fqlga
