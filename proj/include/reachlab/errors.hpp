#pragma once

#include <stdexcept>
#include <string>

namespace reachlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Jacobian has column rank < k at a sampled parameter point.
class DegenerateJacobianError : public Error {
 public:
  using Error::Error;
};

/// Requested the orthogonal complement of a full-dimensional subspace.
class FullSpaceError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for this intrinsic dimension.
class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

/// Subspace ambient dimensions differ, or dim(a) > dim(b).
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class NonpositiveRadiusError : public Error {
 public:
  using Error::Error;
};

class TooFewPointsError : public Error {
 public:
  using Error::Error;
};

/// Invalid numeric parameter (e.g. rho >= delta/2 in the bump construction).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A pair of distinct points mapped to identical images: the map is not
/// bi-Lipschitz on the sample.
class CollapseError : public Error {
 public:
  using Error::Error;
};

/// A transported tangent basis dropped rank under the map derivative.
class RankCollapseError : public Error {
 public:
  using Error::Error;
};

class NonOrthogonalMapError : public Error {
 public:
  using Error::Error;
};

/// Neither a closed-form reach nor a sampled estimate is available.
class ReachUnavailableError : public Error {
 public:
  using Error::Error;
};

class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

/// Experiment config failed semantic validation (exit status 3 in the CLI).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Experiment config failed to parse (exit status 2 in the CLI).
class ConfigParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace reachlab
