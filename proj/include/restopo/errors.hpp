#pragma once

#include <stdexcept>
#include <string>

namespace restopo {

/// Malformed input data (file contents, headers, value counts).
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem-level failure (open, read, write, rename).
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid parameter combination (calibration, thresholds, geometry).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The kriging system could not be solved.
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Incomparable persistence diagrams (dimension or essential-class mismatch).
struct metric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Problem exceeds a documented size budget.
struct size_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace restopo
