#pragma once

#include <cstdint>
#include <vector>

#include "reachlab/manifold.hpp"

namespace reachlab::zoo {

/// Unit circle in R^2, t -> (cos t, sin t). Reach 1.
ParametricManifold circle(double radius = 1.0);

/// Axis-aligned ellipse in R^2, t -> (r1 cos t, r2 sin t).
ParametricManifold ellipse(double r1, double r2);

/// Axis-aligned ellipsoid surface in R^3 (k = 2).
ParametricManifold ellipsoid(double r1, double r2, double r3);

/// Sphere of radius rho in R^3 (k = 2). Reach rho.
ParametricManifold sphere(double radius = 1.0);

/// Unit circle in R^3 through e1 whose plane makes angle theta with e2:
/// t -> (cos t, sin t cos theta, sin t sin theta). Reach 1.
ParametricManifold tilted_circle(double theta);

/// Trefoil knot t -> ((2 + cos 3t) cos 2t, (2 + cos 3t) sin 2t, sin 3t).
ParametricManifold trefoil();

/// Open flat segment {(x, 0) : |x| < 1} in R^2. Reach +inf.
ParametricManifold segment();

/// Embeds `m` into R^{n_target} by zero-padding and then applying a seeded
/// random rotation, so downstream random maps see a generic orientation.
ParametricManifold pad_with_rotation(const ParametricManifold& m, int n_target,
                                     std::uint64_t seed);

/// One-line listing of every zoo entry and its parameters, for the CLI.
std::vector<std::string> describe_entries();

}  // namespace reachlab::zoo
