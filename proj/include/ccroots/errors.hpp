#pragma once

#include <stdexcept>

namespace ccroots {

/// A requested computation exceeds a documented size cap.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed (singular systems, no acceptable instance).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ccroots
