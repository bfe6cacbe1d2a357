#pragma once

#include <stdexcept>

namespace covbvp {

struct NewtonFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace covbvp
