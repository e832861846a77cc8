#pragma once

#include <stdexcept>
#include <string>

namespace rcqm {

struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PictureMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RealizationMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Requested transform exists in the continuum but has no exact lattice form.
struct Unsupported : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace rcqm
