#pragma once

#include <stdexcept>
#include <string>

namespace bernlab {

// Erosion radius at or beyond the inradius: the offset polygon is empty.
struct EmptyErosion : std::runtime_error {
  explicit EmptyErosion(const std::string& what) : std::runtime_error(what) {}
};

// Annulus gap between inner and outer boundary is too small for the grid.
struct GeometryTooTight : std::runtime_error {
  explicit GeometryTooTight(const std::string& what) : std::runtime_error(what) {}
};

// Iterative linear solve failed to reach the residual tolerance.
struct SolveDiverged : std::runtime_error {
  explicit SolveDiverged(const std::string& what) : std::runtime_error(what) {}
};

// A probe along an inner normal never crossed the requested level line.
struct NormalProbeFailed : std::runtime_error {
  explicit NormalProbeFailed(const std::string& what) : std::runtime_error(what) {}
};

// Closed-form field evaluated at its singular charge location.
struct SingularPoint : std::runtime_error {
  explicit SingularPoint(const std::string& what) : std::runtime_error(what) {}
};

// A config or suite file failed validation; message names the offending key.
struct ConfigInvalid : std::runtime_error {
  explicit ConfigInvalid(const std::string& what) : std::runtime_error(what) {}
};

// Requested solution bundle directory or file is missing.
struct BundleMissing : std::runtime_error {
  explicit BundleMissing(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bernlab
