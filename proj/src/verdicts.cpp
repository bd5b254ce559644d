#include "bvpindex/verdicts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bvpindex/degree.hpp"
#include "bvpindex/oracle.hpp"

namespace bvpindex::verdicts {

namespace {

using linalg::Matrix;
using linalg::Vector;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void add_check(Verdict& v, const std::string& name, bool passed, const std::string& evidence) {
    v.checklist.push_back({name, passed, evidence});
}

Verdict refused(std::string id, std::string reason) {
    Verdict v;
    v.id = std::move(id);
    v.guard_passed = false;
    v.refusal_reason = std::move(reason);
    v.conclusion = Conclusion::inconclusive;
    return v;
}

SpectralSummary summarize(const reduction::SpectralStructure& s, bool aligned, double shift) {
    SpectralSummary out;
    out.present = true;
    out.aligned = aligned;
    out.shift = shift;
    out.nu = s.nu;
    out.n0 = s.n0;
    out.l = s.l;
    out.symmetric = s.symmetric;
    out.t_residual = s.t_residual;
    out.det_T = s.det_T;
    out.eigenvalues = s.eigenvalues;
    return out;
}

ThetaSummary summarize_theta(const reduction::ReducedMap& rm) {
    ThetaSummary out;
    out.present = true;
    out.order = rm.order;
    out.parity = expr::to_string(rm.parity);
    out.min_norm_on_sphere = degree::min_norm_on_sphere(rm.as_finite_map());
    if (rm.dim == 1) {
        for (const double c : {1.0, -1.0}) {
            Vector cv(1);
            cv << c;
            out.samples_1d.emplace_back(c, rm.theta(cv)(0));
        }
    }
    return out;
}

struct PartsSide {
    std::vector<const fem::PrincipalPart*> parts;
    std::vector<std::string> names;
    const fem::PrincipalPart* fk = nullptr;
    const fem::PrincipalPart* qk = nullptr;
    const fem::PrincipalPart* gk = nullptr;
};

PartsSide infinity_parts(const fem::ProblemSpec& spec, bool include_fk) {
    PartsSide side;
    if (include_fk && spec.fk) {
        side.fk = &*spec.fk;
        side.parts.push_back(side.fk);
        side.names.push_back("fk");
    }
    if (spec.qk) {
        side.qk = &*spec.qk;
        side.parts.push_back(side.qk);
        side.names.push_back("qk");
    }
    if (spec.gk) {
        side.gk = &*spec.gk;
        side.parts.push_back(side.gk);
        side.names.push_back("gk");
    }
    return side;
}

PartsSide zero_parts(const fem::ProblemSpec& spec) {
    PartsSide side;
    if (spec.ql) {
        side.qk = &*spec.ql;
        side.parts.push_back(side.qk);
        side.names.push_back("ql");
    }
    if (spec.gl) {
        side.gk = &*spec.gl;
        side.parts.push_back(side.gk);
        side.names.push_back("gl");
    }
    return side;
}

// All declared parts must agree on order and parity for the reduced map.
bool side_order_parity(const PartsSide& side, double& order, expr::Parity& parity,
                       std::string& why) {
    if (side.parts.empty()) {
        why = "no principal parts declared";
        return false;
    }
    order = side.parts[0]->decl.order;
    parity = side.parts[0]->decl.parity;
    for (const auto* p : side.parts) {
        if (std::fabs(p->decl.order - order) > 1e-14) {
            why = "declared principal parts disagree on the homogeneity order";
            return false;
        }
        if (p->decl.parity != parity) {
            why = "declared principal parts disagree on parity";
            return false;
        }
    }
    return true;
}

std::function<Vector(const Vector&)> parts_assembler(const fem::Discretization& disc,
                                                     const PartsSide& side) {
    const expr::Expression* gf = side.fk ? &side.fk->expression : nullptr;
    const expr::Expression* fl = side.qk ? &side.qk->expression : nullptr;
    const expr::Expression* sv = side.gk ? &side.gk->expression : nullptr;
    return [&disc, gf, fl, sv](const Vector& u) {
        return fem::assemble_weak(disc, {gf, fl, sv}, u);
    };
}

bool homogeneity_checks(Verdict& v, const PartsSide& side) {
    bool ok = true;
    for (std::size_t i = 0; i < side.parts.size(); ++i) {
        const auto rep = expr::check_homogeneity(side.parts[i]->expression, side.parts[i]->decl);
        const bool pass = rep.passes();
        ok = ok && pass;
        add_check(v, "principal part " + side.names[i] + " homogeneity/parity", pass,
                  "violations " + fmt(rep.max_homogeneity_violation) + " / " +
                      fmt(rep.max_parity_violation));
    }
    return ok;
}

bool remainder_checks(Verdict& v, const fem::ProblemSpec& spec, bool infinity_side) {
    bool ok = true;
    for (const auto& chk : fem::validate_asymptotic_declarations(spec)) {
        const bool is_inf = chk.name.find("_infinity") != std::string::npos;
        if (is_inf != infinity_side) continue;
        std::string ev = "ratios";
        for (const double r : chk.ratios) ev += " " + fmt(r);
        add_check(v, "remainder decay of " + chk.name + " declaration", chk.passed, ev);
        ok = ok && chk.passed;
    }
    return ok;
}

double max_abs_coefficient(const fem::Discretization& disc, const expr::Expression* e) {
    if (!e) return 0.0;
    double m = 0.0;
    for (int el = 0; el < disc.n_elements(); ++el)
        for (const auto& qp : disc.quadrature(el)) m = std::max(m, std::fabs(e->eval2(qp.x, 0.0)));
    return m;
}

struct AlignedSide {
    fem::AlignResult aligned;
    reduction::SpectralStructure structure;
};

AlignedSide analyze_aligned(const reduction::OperatorPencil& pencil,
                            const fem::Discretization& disc, double coefficient_scale) {
    fem::AlignOptions aopt;
    aopt.coefficient_scale = coefficient_scale;
    AlignedSide out;
    out.aligned = fem::resonance_align(pencil, disc, aopt);
    out.structure = reduction::analyze_pencil(out.aligned.pencil);
    return out;
}

// Verifies that the declared zero-side linearization matches finite differences
// of the assembled residual at 0 (coarse tolerance: the remainder may be merely
// order > 1).
bool linearization_fd_check(Verdict& v, const fem::ProblemSpec& spec,
                            const fem::Discretization& disc, const Matrix& A0) {
    const Matrix J = oracle::residual_jacobian(spec, disc, Vector::Zero(disc.dim()));
    const double scale = std::max(1.0, A0.norm());
    const double rel = (J - A0).norm() / scale;
    const bool pass = rel <= 1e-2;
    add_check(v, "declared linearization at zero matches finite differences", pass,
              "relative difference " + fmt(rel));
    return pass;
}

void finalize(Verdict& v, Conclusion desired) {
    v.conclusion = v.all_passed() ? desired : Conclusion::inconclusive;
}

// Shared coercive hypotheses (bound, sign condition, q asymptotically zero).
bool coercive_hypotheses(Verdict& v, const fem::ProblemSpec& spec,
                         const fem::Discretization& disc) {
    const double delta = *spec.delta;
    const double m_hat = fem::monotonicity_probe(spec);
    const double kemb = fem::embedding_constant(disc);
    const double bound = m_hat / (kemb * kemb);
    add_check(v, "gradient nonlinearity strongly monotone (m > 0)", m_hat > 0.0,
              "m = " + fmt(m_hat));
    add_check(v, "delta below m/K^2", m_hat > 0.0 && delta < bound,
              "delta = " + fmt(delta) + ", m/K^2 = " + fmt(bound) + ", K = " + fmt(kemb));

    bool sign_ok = true;
    std::string witness;
    if (spec.g) {
        for (int el = 0; el < disc.n_elements() && sign_ok; ++el)
            for (const auto& qp : disc.quadrature(el)) {
                for (int j = -10; j <= 10 && sign_ok; ++j) {
                    for (const double sgn : {1.0, -1.0}) {
                        const double t = sgn * std::ldexp(1.0, j);
                        const double lhs = spec.g->eval2(qp.x, t) * t;
                        const double rhs = -delta * t * t;
                        if (lhs < rhs - 1e-12 * (1.0 + t * t) * std::max(1.0, delta)) {
                            sign_ok = false;
                            witness = "violated at (x, t) = (" + fmt(qp.x) + ", " + fmt(t) + ")";
                            break;
                        }
                    }
                }
            }
    }
    add_check(v, "one-sided bound g(x,t)t >= -delta t^2 on the sample grid", sign_ok,
              sign_ok ? "no violation on the grid" : witness);

    bool qzero_ok = true;
    std::string qev = "q absent";
    if (spec.q) {
        std::vector<double> ratios;
        for (int j = 0; j < 3; ++j) {
            const double mag = std::pow(10.0, 2 + j);
            double worst = 0.0;
            for (int ix = 0; ix <= 8; ++ix)
                for (const double sgn : {1.0, -1.0})
                    worst = std::max(worst,
                                     std::fabs(spec.q->eval2(ix / 8.0, sgn * mag)) / mag);
            ratios.push_back(worst);
        }
        qzero_ok = (ratios[0] == 0.0 && ratios[1] == 0.0 && ratios[2] == 0.0) ||
                   (ratios[2] <= ratios[1] * (1 + 1e-9) && ratios[1] <= ratios[0] * (1 + 1e-9) &&
                    ratios[2] < ratios[0]);
        qev = "ratios " + fmt(ratios[0]) + " " + fmt(ratios[1]) + " " + fmt(ratios[2]);
    }
    add_check(v, "q asymptotically zero", qzero_ok, qev);
    return v.all_passed();
}

}  // namespace

std::string to_string(Conclusion c) {
    switch (c) {
        case Conclusion::solvable: return "solvable";
        case Conclusion::nontrivial_solution_exists: return "nontrivial_solution_exists";
        default: return "inconclusive";
    }
}

bool Verdict::all_passed() const {
    if (!guard_passed) return false;
    for (const auto& c : checklist)
        if (!c.passed) return false;
    return true;
}

Verdict solv_resonant(const fem::ProblemSpec& spec, const fem::Discretization& disc) {
    const std::string id = "solv_resonant";
    if (!spec.resonant_at_infinity)
        return refused(id, "resonant_at_infinity flag not set");
    const PartsSide side = infinity_parts(spec, /*include_fk=*/true);
    if (side.parts.empty())
        return refused(id, "no infinity-side principal parts declared");
    for (std::size_t i = 0; i < side.parts.size(); ++i)
        if (side.parts[i]->decl.parity != expr::Parity::odd)
            return refused(id, "infinity-side principal part " + side.names[i] +
                                   " must be declared odd for this procedure");
    double order;
    expr::Parity parity;
    std::string why;
    if (!side_order_parity(side, order, parity, why)) return refused(id, why);
    if (!(order > 0.0 && order < 1.0))
        return refused(id, "infinity-side order must lie in (0, 1)");

    Verdict v;
    v.id = id;
    homogeneity_checks(v, side);
    remainder_checks(v, spec, /*infinity_side=*/true);

    AlignedSide inf;
    try {
        inf = analyze_aligned(fem::infinity_side_pencil(spec, disc), disc,
                              max_abs_coefficient(disc, spec.gprimeInf ? &*spec.gprimeInf : nullptr));
    } catch (const MisdeclaredResonanceError& e) {
        return refused(id, std::string("kernel empty: ") + e.what());
    }
    v.infinity_pencil = summarize(inf.structure, true, inf.aligned.shift);
    add_check(v, "infinity-side linearization degenerate after alignment", inf.structure.l >= 1,
              "kernel dimension " + std::to_string(inf.structure.l) + ", shift " +
                  fmt(inf.aligned.shift));

    const auto theta = reduction::build_reduced_map(inf.structure, inf.aligned.pencil,
                                                    parts_assembler(disc, side), order, parity);
    v.theta_infinity = summarize_theta(theta);
    add_check(v, "reduced principal map nonvanishing on the kernel sphere",
              v.theta_infinity.min_norm_on_sphere >= 1e-10,
              "min |Theta| = " + fmt(v.theta_infinity.min_norm_on_sphere));

    const auto idx = reduction::index_at_infinity(inf.structure, &theta);
    v.index_infinity = idx;
    v.heuristic = v.heuristic || idx.heuristic;
    add_check(v, "asymptotic index defined", idx.defined, idx.defined ? "" : idx.reason);
    add_check(v, "asymptotic index nonzero", idx.defined && idx.value != 0,
              idx.defined ? "index " + std::to_string(idx.value) : "undefined");
    finalize(v, Conclusion::solvable);
    return v;
}

Verdict solv_coercive(const fem::ProblemSpec& spec, const fem::Discretization& disc) {
    const std::string id = "solv_coercive";
    if (!spec.delta) return refused(id, "coercive procedure needs delta in the problem spec");

    Verdict v;
    v.id = id;
    coercive_hypotheses(v, spec, disc);

    reduction::IndexResult inf;
    inf.defined = true;
    inf.value = 1;  // a-priori-estimate route: asymptotic index 1
    v.index_infinity = inf;
    finalize(v, Conclusion::solvable);
    return v;
}

Verdict nontrivial_resonant_inf(const fem::ProblemSpec& spec, const fem::Discretization& disc) {
    const std::string id = "nontrivial_resonant_inf";
    if (!fem::dirichlet_zero_check(spec, disc))
        return refused(id, "zero is not a solution (f, q or g does not vanish at t = 0)");
    if (!spec.resonant_at_infinity)
        return refused(id, "resonant_at_infinity flag not set");
    if (spec.resonant_at_zero)
        return refused(id, "zero side declared resonant; use the double-degenerate procedure");
    const PartsSide side = infinity_parts(spec, /*include_fk=*/true);
    if (side.parts.empty())
        return refused(id, "no infinity-side principal parts declared");
    for (std::size_t i = 0; i < side.parts.size(); ++i)
        if (side.parts[i]->decl.parity != expr::Parity::even)
            return refused(id, "infinity-side principal part " + side.names[i] +
                                   " must be declared even for this procedure");
    double order;
    expr::Parity parity;
    std::string why;
    if (!side_order_parity(side, order, parity, why)) return refused(id, why);
    if (!(order > 0.0 && order < 1.0))
        return refused(id, "infinity-side order must lie in (0, 1)");

    const auto zero_pencil = fem::zero_side_pencil(spec, disc);
    const auto zstruct = reduction::analyze_pencil(zero_pencil);
    if (zstruct.l != 0)
        return refused(id, "zero-side linearization is degenerate; use the double-degenerate "
                           "procedure instead");

    Verdict v;
    v.id = id;
    add_check(v, "zero solves the problem", true, "f, q, g vanish at t = 0");
    v.zero_pencil = summarize(zstruct, false, 0.0);
    add_check(v, "zero-side linearization nondegenerate", true,
              "kernel empty, negative multiplicities " + std::to_string(zstruct.nu));
    linearization_fd_check(v, spec, disc, zero_pencil.A);
    const auto idx0 = reduction::index_at_zero(zstruct, nullptr);
    v.index_zero = idx0;

    homogeneity_checks(v, side);
    remainder_checks(v, spec, /*infinity_side=*/true);

    AlignedSide inf;
    try {
        inf = analyze_aligned(fem::infinity_side_pencil(spec, disc), disc,
                              max_abs_coefficient(disc, spec.gprimeInf ? &*spec.gprimeInf : nullptr));
    } catch (const MisdeclaredResonanceError& e) {
        return refused(id, std::string("infinity-side kernel empty: ") + e.what());
    }
    v.infinity_pencil = summarize(inf.structure, true, inf.aligned.shift);

    const auto theta = reduction::build_reduced_map(inf.structure, inf.aligned.pencil,
                                                    parts_assembler(disc, side), order, parity);
    v.theta_infinity = summarize_theta(theta);
    add_check(v, "reduced principal map nonvanishing on the kernel sphere",
              v.theta_infinity.min_norm_on_sphere >= 1e-10,
              "min |Theta| = " + fmt(v.theta_infinity.min_norm_on_sphere));

    const auto idx = reduction::index_at_infinity(inf.structure, &theta);
    v.index_infinity = idx;
    v.heuristic = v.heuristic || idx.heuristic;
    add_check(v, "asymptotic index defined", idx.defined, idx.defined ? "" : idx.reason);
    add_check(v, "index at zero differs from asymptotic index",
              idx.defined && idx0.value != idx.value,
              "ind(0) = " + std::to_string(idx0.value) +
                  (idx.defined ? ", ind(inf) = " + std::to_string(idx.value) : ", ind(inf) undefined"));
    finalize(v, Conclusion::nontrivial_solution_exists);
    return v;
}

Verdict nontrivial_double_degenerate(const fem::ProblemSpec& spec,
                                     const fem::Discretization& disc) {
    const std::string id = "nontrivial_double_degenerate";
    if (!fem::dirichlet_zero_check(spec, disc))
        return refused(id, "zero is not a solution (f, q or g does not vanish at t = 0)");
    if (!spec.resonant_at_zero || !spec.resonant_at_infinity)
        return refused(id, "both resonance flags must be set");
    if (spec.fk)
        return refused(id, "quasilinear procedure: no gradient principal part fk allowed");
    const PartsSide iside = infinity_parts(spec, /*include_fk=*/false);
    const PartsSide zside = zero_parts(spec);
    if (iside.parts.empty() || zside.parts.empty())
        return refused(id, "principal parts required on both sides");
    double korder, lorder;
    expr::Parity kparity, lparity;
    std::string why;
    if (!side_order_parity(iside, korder, kparity, why)) return refused(id, why);
    if (!side_order_parity(zside, lorder, lparity, why)) return refused(id, why);
    if (!(korder > 0.0 && korder < 1.0))
        return refused(id, "infinity-side order must lie in (0, 1)");
    if (!(lorder > 1.0)) return refused(id, "zero-side order must exceed 1");
    const bool pairing_ok =
        (kparity == expr::Parity::odd && lparity == expr::Parity::even) ||
        (kparity == expr::Parity::even && lparity == expr::Parity::odd);
    if (!pairing_ok)
        return refused(id, "parity pairing must be odd at infinity with even at zero, or vice versa");

    Verdict v;
    v.id = id;
    add_check(v, "zero solves the problem", true, "f, q, g vanish at t = 0");
    homogeneity_checks(v, iside);
    homogeneity_checks(v, zside);
    remainder_checks(v, spec, true);
    remainder_checks(v, spec, false);

    AlignedSide zero;
    try {
        zero = analyze_aligned(fem::zero_side_pencil(spec, disc), disc,
                               max_abs_coefficient(disc, spec.gprime0 ? &*spec.gprime0 : nullptr));
    } catch (const MisdeclaredResonanceError& e) {
        return refused(id, std::string("zero side: ") + e.what());
    }
    v.zero_pencil = summarize(zero.structure, true, zero.aligned.shift);

    AlignedSide inf;
    try {
        inf = analyze_aligned(fem::infinity_side_pencil(spec, disc), disc,
                              max_abs_coefficient(disc, spec.gprimeInf ? &*spec.gprimeInf : nullptr));
    } catch (const MisdeclaredResonanceError& e) {
        return refused(id, std::string("infinity side: ") + e.what());
    }
    v.infinity_pencil = summarize(inf.structure, true, inf.aligned.shift);

    const auto theta0 = reduction::build_reduced_map(zero.structure, zero.aligned.pencil,
                                                     parts_assembler(disc, zside), lorder, lparity);
    v.theta_zero = summarize_theta(theta0);
    add_check(v, "zero-side reduced map nonvanishing on the kernel sphere",
              v.theta_zero.min_norm_on_sphere >= 1e-10,
              "min |Theta| = " + fmt(v.theta_zero.min_norm_on_sphere));

    const auto thetak = reduction::build_reduced_map(inf.structure, inf.aligned.pencil,
                                                     parts_assembler(disc, iside), korder, kparity);
    v.theta_infinity = summarize_theta(thetak);
    add_check(v, "infinity-side reduced map nonvanishing on the kernel sphere",
              v.theta_infinity.min_norm_on_sphere >= 1e-10,
              "min |Theta| = " + fmt(v.theta_infinity.min_norm_on_sphere));

    const auto idx0 = reduction::index_at_zero(zero.structure, &theta0);
    const auto idxi = reduction::index_at_infinity(inf.structure, &thetak);
    v.index_zero = idx0;
    v.index_infinity = idxi;
    v.heuristic = idx0.heuristic || idxi.heuristic;
    add_check(v, "index at zero defined", idx0.defined, idx0.defined ? "" : idx0.reason);
    add_check(v, "asymptotic index defined", idxi.defined, idxi.defined ? "" : idxi.reason);
    add_check(v, "indices differ", idx0.defined && idxi.defined && idx0.value != idxi.value,
              (idx0.defined ? "ind(0) = " + std::to_string(idx0.value) : "ind(0) undefined") +
                  (idxi.defined ? ", ind(inf) = " + std::to_string(idxi.value)
                                : ", ind(inf) undefined"));
    finalize(v, Conclusion::nontrivial_solution_exists);
    return v;
}

Verdict nontrivial_coercive_degenerate_zero(const fem::ProblemSpec& spec,
                                            const fem::Discretization& disc) {
    const std::string id = "nontrivial_coercive_degenerate_zero";
    if (!spec.delta) return refused(id, "coercive procedure needs delta in the problem spec");
    if (!fem::dirichlet_zero_check(spec, disc))
        return refused(id, "zero is not a solution (f, q or g does not vanish at t = 0)");
    if (!spec.resonant_at_zero) return refused(id, "resonant_at_zero flag not set");
    const PartsSide zside = zero_parts(spec);
    if (zside.parts.empty()) return refused(id, "zero-side principal parts required");
    for (std::size_t i = 0; i < zside.parts.size(); ++i)
        if (zside.parts[i]->decl.parity != expr::Parity::even)
            return refused(id, "zero-side principal part " + zside.names[i] +
                                   " must be declared even for this procedure");
    double lorder;
    expr::Parity lparity;
    std::string why;
    if (!side_order_parity(zside, lorder, lparity, why)) return refused(id, why);
    if (!(lorder > 1.0)) return refused(id, "zero-side order must exceed 1");

    Verdict v;
    v.id = id;
    add_check(v, "zero solves the problem", true, "f, q, g vanish at t = 0");
    coercive_hypotheses(v, spec, disc);

    reduction::IndexResult infidx;
    infidx.defined = true;
    infidx.value = 1;
    v.index_infinity = infidx;

    AlignedSide zero;
    if (spec.qprime0_tuning) {
        const auto tuned = fem::tune_zero_resonance(spec, disc);
        add_check(v, "zero-side resonance located in the tuning range", tuned.found,
                  tuned.found ? "amplitude " + fmt(tuned.amplitude)
                              : "no singular amplitude in the range");
        if (!tuned.found) {
            finalize(v, Conclusion::inconclusive);
            return v;
        }
        v.tuned_amplitude = tuned.amplitude;
        zero.aligned = tuned.aligned;
        zero.structure = reduction::analyze_pencil(zero.aligned.pencil);
    } else {
        try {
            zero = analyze_aligned(fem::zero_side_pencil(spec, disc), disc,
                                   max_abs_coefficient(disc, spec.gprime0 ? &*spec.gprime0 : nullptr));
        } catch (const MisdeclaredResonanceError& e) {
            return refused(id, std::string("zero side: ") + e.what());
        }
        add_check(v, "zero-side resonance aligned", true, "shift " + fmt(zero.aligned.shift));
    }
    v.zero_pencil = summarize(zero.structure, true, zero.aligned.shift);

    homogeneity_checks(v, zside);
    remainder_checks(v, spec, false);

    const auto theta0 = reduction::build_reduced_map(zero.structure, zero.aligned.pencil,
                                                     parts_assembler(disc, zside), lorder, lparity);
    v.theta_zero = summarize_theta(theta0);
    add_check(v, "zero-side reduced map nonvanishing on the kernel sphere",
              v.theta_zero.min_norm_on_sphere >= 1e-10,
              "min |Theta| = " + fmt(v.theta_zero.min_norm_on_sphere));

    const auto idx0 = reduction::index_at_zero(zero.structure, &theta0);
    v.index_zero = idx0;
    v.heuristic = idx0.heuristic;
    add_check(v, "index at zero defined", idx0.defined, idx0.defined ? "" : idx0.reason);
    add_check(v, "index at zero differs from the asymptotic index 1",
              idx0.defined && idx0.value != 1,
              idx0.defined ? "ind(0) = " + std::to_string(idx0.value) : "undefined");
    finalize(v, Conclusion::nontrivial_solution_exists);
    return v;
}

Verdict nontrivial_parity(const fem::ProblemSpec& spec, const fem::Discretization& disc) {
    const std::string id = "nontrivial_parity";
    if (!fem::dirichlet_zero_check(spec, disc))
        return refused(id, "zero is not a solution (f, q or g does not vanish at t = 0)");

    const auto zpencil = fem::zero_side_pencil(spec, disc);
    const auto zstruct = reduction::analyze_pencil(zpencil);
    if (zstruct.l != 0)
        return refused(id, "zero-side linearization degenerate; use a degenerate procedure");
    const auto ipencil = fem::infinity_side_pencil(spec, disc);
    const auto istruct = reduction::analyze_pencil(ipencil);
    if (istruct.l != 0)
        return refused(id, "infinity-side linearization degenerate; use a degenerate procedure");

    Verdict v;
    v.id = id;
    add_check(v, "zero solves the problem", true, "f, q, g vanish at t = 0");
    v.zero_pencil = summarize(zstruct, false, 0.0);
    v.infinity_pencil = summarize(istruct, false, 0.0);
    add_check(v, "both linearizations nondegenerate", true,
              "kernel dimensions 0 / 0");
    remainder_checks(v, spec, true);
    remainder_checks(v, spec, false);
    linearization_fd_check(v, spec, disc, zpencil.A);

    v.index_zero = reduction::index_at_zero(zstruct, nullptr);
    v.index_infinity = reduction::index_at_infinity(istruct, nullptr);
    add_check(v, "negative multiplicity sums have different parities",
              (zstruct.nu % 2) != (istruct.nu % 2),
              "nu(0) = " + std::to_string(zstruct.nu) + ", nu(inf) = " +
                  std::to_string(istruct.nu));
    finalize(v, Conclusion::nontrivial_solution_exists);
    return v;
}

const std::vector<std::string>& verdict_ids() {
    static const std::vector<std::string> ids = {
        "nontrivial_parity",   "solv_coercive",
        "solv_resonant",       "nontrivial_resonant_inf",
        "nontrivial_double_degenerate", "nontrivial_coercive_degenerate_zero"};
    return ids;
}

Verdict run_verdict(const std::string& id, const fem::ProblemSpec& spec,
                    const fem::Discretization& disc) {
    if (id == "solv_resonant") return solv_resonant(spec, disc);
    if (id == "solv_coercive") return solv_coercive(spec, disc);
    if (id == "nontrivial_resonant_inf") return nontrivial_resonant_inf(spec, disc);
    if (id == "nontrivial_double_degenerate") return nontrivial_double_degenerate(spec, disc);
    if (id == "nontrivial_coercive_degenerate_zero")
        return nontrivial_coercive_degenerate_zero(spec, disc);
    if (id == "nontrivial_parity") return nontrivial_parity(spec, disc);
    throw Error("unknown verdict id '" + id + "'");
}

std::vector<Verdict> run_auto(const fem::ProblemSpec& spec, const fem::Discretization& disc) {
    std::vector<Verdict> out;
    for (const auto& id : verdict_ids()) out.push_back(run_verdict(id, spec, disc));
    return out;
}

}  // namespace bvpindex::verdicts
