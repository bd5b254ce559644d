#include "bvpindex/report.hpp"

#include <chrono>

#include "bvpindex/oracle.hpp"
#include "bvpindex/verdicts.hpp"

namespace bvpindex::report {

using nlohmann::json;

namespace {

json eigenvalue_table(const std::vector<std::complex<double>>& evs) {
    json arr = json::array();
    for (const auto& ev : evs) arr.push_back({ev.real(), ev.imag()});
    return arr;
}

json spectral_json(const verdicts::SpectralSummary& s) {
    if (!s.present) return nullptr;
    json j;
    j["aligned"] = s.aligned;
    j["shift"] = s.shift;
    j["nu"] = s.nu;
    j["nu_convention"] = "real negative eigenvalues only; complex pairs excluded";
    j["n0"] = s.n0;
    j["l"] = s.l;
    j["symmetric"] = s.symmetric;
    j["t_residual"] = s.t_residual;
    j["det_T"] = s.det_T;
    j["eigenvalues"] = eigenvalue_table(s.eigenvalues);
    return j;
}

json theta_json(const verdicts::ThetaSummary& t) {
    if (!t.present) return nullptr;
    json j;
    j["order"] = t.order;
    j["parity"] = t.parity;
    j["min_norm_on_sphere"] = t.min_norm_on_sphere;
    json samples = json::array();
    for (const auto& [c, v] : t.samples_1d) samples.push_back({c, v});
    j["sphere_samples"] = samples;
    return j;
}

json index_json(const reduction::IndexResult& r) {
    json j;
    j["defined"] = r.defined;
    if (r.defined) j["value"] = r.value;
    else j["reason"] = r.reason;
    j["heuristic"] = r.heuristic;
    j["nu"] = r.nu;
    j["n0"] = r.n0;
    j["l"] = r.l;
    if (r.deg_theta) j["deg_theta"] = *r.deg_theta;
    j["complement_factor"] = r.complement_factor;
    return j;
}

json verdict_json(const verdicts::Verdict& v) {
    json j;
    j["id"] = v.id;
    j["guard_passed"] = v.guard_passed;
    if (!v.guard_passed) j["refusal_reason"] = v.refusal_reason;
    json checks = json::array();
    for (const auto& c : v.checklist)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"evidence", c.evidence}});
    j["checklist"] = checks;
    j["conclusion"] = verdicts::to_string(v.conclusion);
    j["heuristic"] = v.heuristic;
    if (v.index_zero) j["index_zero"] = index_json(*v.index_zero);
    if (v.index_infinity) j["index_infinity"] = index_json(*v.index_infinity);
    if (v.zero_pencil.present) j["zero_pencil"] = spectral_json(v.zero_pencil);
    if (v.infinity_pencil.present) j["infinity_pencil"] = spectral_json(v.infinity_pencil);
    if (v.theta_zero.present) j["theta_zero"] = theta_json(v.theta_zero);
    if (v.theta_infinity.present) j["theta_infinity"] = theta_json(v.theta_infinity);
    if (v.tuned_amplitude) j["tuned_amplitude"] = *v.tuned_amplitude;
    return j;
}

json solution_set_json(const oracle::SolutionSet& set, const fem::Discretization& disc) {
    json j;
    j["method"] = set.method;
    j["starts"] = set.starts;
    j["converged"] = set.converged;
    j["distinctness_radius"] = set.distinctness_radius;
    j["count"] = set.solutions.size();
    j["nontrivial_count"] = set.nontrivial_count();
    json sols = json::array();
    for (const auto& s : set.solutions) {
        json js;
        js["max_norm"] = s.max_norm;
        js["residual_norm"] = s.residual_norm;
        json samples = json::array();
        for (int i = 1; i <= 9; ++i) samples.push_back(disc.interpolate(s.u, i / 10.0));
        js["values_at_tenths"] = samples;
        sols.push_back(js);
    }
    j["solutions"] = sols;
    return j;
}

// Spectral table of a raw (possibly unaligned) pencil for the report.
json side_table(const fem::ProblemSpec& spec, const fem::Discretization& disc, bool zero_side) {
    const bool declared = zero_side
                              ? (spec.fprime0 || spec.qprime0 || spec.gprime0)
                              : (spec.fprimeInf || spec.qprimeInf || spec.gprimeInf);
    if (!declared) return nullptr;
    json j;
    auto pencil = zero_side ? fem::zero_side_pencil(spec, disc)
                            : fem::infinity_side_pencil(spec, disc);
    const bool resonant = zero_side ? spec.resonant_at_zero : spec.resonant_at_infinity;
    double shift = 0.0;
    bool aligned = false;
    if (resonant) {
        try {
            auto ar = fem::resonance_align(pencil, disc);
            pencil = ar.pencil;
            shift = ar.shift;
            aligned = true;
        } catch (const MisdeclaredResonanceError& e) {
            j["alignment_error"] = e.what();
        }
    }
    const auto s = reduction::analyze_pencil(pencil);
    verdicts::SpectralSummary sum;
    sum.present = true;
    sum.aligned = aligned;
    sum.shift = shift;
    sum.nu = s.nu;
    sum.n0 = s.n0;
    sum.l = s.l;
    sum.symmetric = s.symmetric;
    sum.t_residual = s.t_residual;
    sum.det_T = s.det_T;
    sum.eigenvalues = s.eigenvalues;
    json out = spectral_json(sum);
    for (auto& [k, v] : j.items()) out[k] = v;
    return out;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

AnalysisOutcome run(const config::ConfigDocument& cfg, bool verdicts_enabled) {
    Timer total;
    AnalysisOutcome out;
    json& m = out.report.machine;
    m["version"] = config::kToolVersion;
    m["config"] = cfg.normalized;

    const fem::Discretization disc(cfg.problem.n_elements);
    {
        json d;
        d["n_elements"] = cfg.problem.n_elements;
        d["dim"] = disc.dim();
        d["embedding_constant"] = fem::embedding_constant(disc);
        m["discretization"] = d;
    }

    Timer spectral_t;
    m["pencils"]["zero"] = side_table(cfg.problem, disc, true);
    m["pencils"]["infinity"] = side_table(cfg.problem, disc, false);
    out.report.timings["spectral_seconds"] = spectral_t.seconds();

    if (verdicts_enabled) {
        Timer verdict_t;
        std::vector<verdicts::Verdict> vs;
        if (cfg.analysis.auto_theorems) {
            vs = verdicts::run_auto(cfg.problem, disc);
        } else {
            for (const auto& id : cfg.analysis.theorems)
                vs.push_back(verdicts::run_verdict(id, cfg.problem, disc));
        }
        json arr = json::array();
        int ran = 0;
        for (const auto& v : vs) {
            arr.push_back(verdict_json(v));
            if (v.guard_passed) ++ran;
        }
        m["verdicts"] = arr;
        out.report.timings["verdicts_seconds"] = verdict_t.seconds();

        if (cfg.analysis.auto_theorems) {
            out.exit_code = ran == 0 ? 2 : 0;
        } else {
            out.exit_code = 0;
            for (const auto& v : vs)
                if (!v.guard_passed) out.exit_code = 2;
        }

        if (cfg.analysis.verify_with_oracle) {
            Timer oracle_t;
            json oj;
            const auto& oo = cfg.analysis.oracle;
            std::vector<oracle::SolutionSet> sets;
            if (oo.method != config::OracleMethod::newton) {
                if (oracle::classical_form(cfg.problem)) {
                    sets.push_back(oracle::find_solutions_shooting(cfg.problem, disc, oo.s_lo,
                                                                   oo.s_hi));
                } else {
                    oj["shooting_skipped"] = "problem not in classical form";
                }
            }
            if (oo.method != config::OracleMethod::shooting)
                sets.push_back(oracle::find_solutions_newton(cfg.problem, disc, oo.starts,
                                                             oo.seed));
            json jsets = json::array();
            bool any_solution = false, any_nontrivial = false;
            for (const auto& s : sets) {
                jsets.push_back(solution_set_json(s, disc));
                any_solution = any_solution || !s.solutions.empty();
                any_nontrivial = any_nontrivial || s.nontrivial_count() > 0;
            }
            oj["solution_sets"] = jsets;

            json agreement = json::array();
            for (const auto& v : vs) {
                if (!v.guard_passed || v.conclusion == verdicts::Conclusion::inconclusive)
                    continue;
                const bool needs_nontrivial =
                    v.conclusion == verdicts::Conclusion::nontrivial_solution_exists;
                const bool confirmed = needs_nontrivial ? any_nontrivial : any_solution;
                agreement.push_back({{"verdict", v.id},
                                     {"conclusion", verdicts::to_string(v.conclusion)},
                                     {"oracle_confirms", confirmed}});
            }
            oj["agreement"] = agreement;
            m["oracle"] = oj;
            out.report.timings["oracle_seconds"] = oracle_t.seconds();
        }
    }

    out.report.timings["total_seconds"] = total.seconds();
    return out;
}

}  // namespace

std::string Report::to_string() const {
    json j;
    j["machine"] = machine;
    j["timings"] = timings;
    return j.dump(2) + "\n";
}

std::string Report::machine_string() const { return machine.dump(2); }

AnalysisOutcome analyze(const config::ConfigDocument& cfg) { return run(cfg, true); }

AnalysisOutcome spectrum(const config::ConfigDocument& cfg) { return run(cfg, false); }

}  // namespace bvpindex::report
