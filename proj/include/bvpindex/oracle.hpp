#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bvpindex/fem.hpp"

namespace bvpindex::oracle {

struct Solution {
    linalg::Vector u;
    double residual_norm = 0.0;  // discrete residual (Newton) or |u(1)| (shooting)
    double max_norm = 0.0;
};

struct SolutionSet {
    std::vector<Solution> solutions;  // sorted by max-norm, then lexicographically
    int starts = 0;
    int converged = 0;
    double distinctness_radius = 1e-4;
    std::string method;

    int nontrivial_count(double threshold = 1e-2) const;
};

struct ShootResult {
    double terminal = 0.0;
    bool diverged = false;
    std::vector<double> nodal;  // trajectory sampled at the mesh nodes
};

/// Classical form only (f = p*s with constant p, no q): integrates u'' = g(x,u)/p
/// from (u,u')(0) = (0, slope) with fixed-step classic Runge-Kutta.
ShootResult shoot(const fem::ProblemSpec& spec, const fem::Discretization& disc, double slope,
                  int steps = 10000);

/// True iff the spec is in the classical form `shoot` accepts.
bool classical_form(const fem::ProblemSpec& spec);

/// Scans the slope range, brackets sign changes of u(1), bisects each bracket
/// to |u(1)| <= 1e-10, and converts the shots to mesh coefficients.
SolutionSet find_solutions_shooting(const fem::ProblemSpec& spec, const fem::Discretization& disc,
                                    double s_lo, double s_hi, int grid = 401);

/// Multi-start damped Newton on the assembled residual.  Starts: zero, scaled
/// low eigenvectors of (stiffness, mass), and seeded random mode mixtures.
SolutionSet find_solutions_newton(const fem::ProblemSpec& spec, const fem::Discretization& disc,
                                  int random_starts = 8, unsigned seed = 1234);

/// One damped-Newton run from a given start; empty when not converged.
std::optional<Solution> newton_from(const fem::ProblemSpec& spec,
                                    const fem::Discretization& disc, linalg::Vector start);

/// Central finite-difference Jacobian of the assembled residual at u.
linalg::Matrix residual_jacobian(const fem::ProblemSpec& spec, const fem::Discretization& disc,
                                 const linalg::Vector& u);

}  // namespace bvpindex::oracle
