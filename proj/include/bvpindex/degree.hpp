#pragma once

#include <functional>
#include <optional>

#include "bvpindex/linalg.hpp"

namespace bvpindex::degree {

/// A continuous map R^d -> R^d given by a pure evaluator.
struct FiniteMap {
    int dim = 0;
    std::function<linalg::Vector(const linalg::Vector&)> eval;
    std::optional<double> homogeneous_order;
    bool odd = false;
};

struct DegreeResult {
    int value = 0;
    bool heuristic = false;
};

/// Dimension 1: (sign F(r) - sign F(-r)) / 2.  Throws BoundaryZeroError when
/// |F(±r)| < 1e-12.
int degree_1d(const FiniteMap& f, double radius);

struct WindingOptions {
    int initial_segments = 32;
    long max_segments = 1L << 20;
    double min_norm = 1e-10;  // boundary values below this are treated as zeros
};

/// Dimension 2: total turning of the boundary curve, adaptively subdivided so
/// each accepted step turns less than pi/2.
int degree_2d_winding(const FiniteMap& f, double radius, const WindingOptions& opt = {});

struct RegularOptions {
    int grid = 6;                  // starts per axis
    double jacobian_step = 1e-6;
    double dedup_scale = 1e-6;     // times radius
    unsigned seed = 0x5eed;
    int max_iterations = 80;
};

/// Multi-start damped Newton root collection plus sign-of-Jacobian summation.
/// Exact (cross-checked) for d <= 2, heuristic beyond.
DegreeResult degree_nd_regular(const FiniteMap& f, double radius, const RegularOptions& opt = {});

/// Degree of a positively homogeneous map on the unit ball about 0.  Requires
/// homogeneous_order set; throws SphereZeroError when the map (sampled on a
/// deterministic sphere grid) nearly vanishes on the unit sphere.
DegreeResult degree_homogeneous(const FiniteMap& f);

/// Smallest sampled boundary norm used by the homogeneous-engine admissibility
/// check (same deterministic sphere grid).
double min_norm_on_sphere(const FiniteMap& f);

}  // namespace bvpindex::degree
