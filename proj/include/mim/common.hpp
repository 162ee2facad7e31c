#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mim {

// Thrown when tensor shapes or operation contracts are violated.
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown on invalid values (domain errors, degenerate inputs, bad configs).
struct ValueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a forward/backward pass produces NaN/Inf or diverges.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown on malformed files (datasets, checkpoints, configs).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mim
