#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "bvpindex/fem.hpp"
#include "bvpindex/reduction.hpp"

namespace bvpindex::verdicts {

enum class Conclusion { solvable, nontrivial_solution_exists, inconclusive };

std::string to_string(Conclusion c);

struct HypothesisCheck {
    std::string name;
    bool passed = false;
    std::string evidence;
};

struct SpectralSummary {
    bool present = false;
    bool aligned = false;
    double shift = 0.0;
    int nu = 0, n0 = 0, l = 0;
    bool symmetric = true;
    double t_residual = 0.0;
    double det_T = 1.0;
    std::vector<std::complex<double>> eigenvalues;
};

struct ThetaSummary {
    bool present = false;
    double order = 0.0;
    std::string parity = "none";
    double min_norm_on_sphere = 0.0;
    std::vector<std::pair<double, double>> samples_1d;  // (c, theta(c)) when dim == 1
};

/// The outcome of one decision procedure: a hypothesis checklist with evidence,
/// the computed indices, and the conclusion.  A conclusion other than
/// `inconclusive` requires every checklist item to have passed; failed guards
/// mark the verdict as refused instead.
struct Verdict {
    std::string id;
    bool guard_passed = true;
    std::string refusal_reason;
    std::vector<HypothesisCheck> checklist;
    std::optional<reduction::IndexResult> index_zero, index_infinity;
    SpectralSummary zero_pencil, infinity_pencil;
    ThetaSummary theta_zero, theta_infinity;
    Conclusion conclusion = Conclusion::inconclusive;
    bool heuristic = false;
    std::optional<double> tuned_amplitude;

    bool all_passed() const;
};

Verdict solv_resonant(const fem::ProblemSpec& spec, const fem::Discretization& disc);
Verdict solv_coercive(const fem::ProblemSpec& spec, const fem::Discretization& disc);
Verdict nontrivial_resonant_inf(const fem::ProblemSpec& spec, const fem::Discretization& disc);
Verdict nontrivial_double_degenerate(const fem::ProblemSpec& spec, const fem::Discretization& disc);
Verdict nontrivial_coercive_degenerate_zero(const fem::ProblemSpec& spec,
                                            const fem::Discretization& disc);
Verdict nontrivial_parity(const fem::ProblemSpec& spec, const fem::Discretization& disc);

Verdict run_verdict(const std::string& id, const fem::ProblemSpec& spec,
                    const fem::Discretization& disc);

/// Fixed order: parity, coercive, resonant solvability, resonant nontrivial,
/// double degenerate, coercive degenerate.  No short-circuit; refused verdicts
/// are included with their refusal reasons.
std::vector<Verdict> run_auto(const fem::ProblemSpec& spec, const fem::Discretization& disc);

const std::vector<std::string>& verdict_ids();

}  // namespace bvpindex::verdicts
