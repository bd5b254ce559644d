#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bvpindex/acceptance.hpp"
#include "bvpindex/config.hpp"
#include "bvpindex/degree.hpp"
#include "bvpindex/oracle.hpp"
#include "bvpindex/report.hpp"
#include "bvpindex/verdicts.hpp"

namespace py = pybind11;
using namespace bvpindex;

namespace {

degree::FiniteMap make_map(int dim, const std::function<linalg::Vector(const linalg::Vector&)>& f,
                           std::optional<double> order, bool odd) {
    return {dim, f, order, odd};
}

fem::ProblemSpec problem_from_json(const std::string& text) {
    // reuse the strict config parser with a default mesh
    nlohmann::json doc;
    doc["problem"] = nlohmann::json::parse(text);
    doc["mesh"] = {{"n_elements", 200}};
    return config::parse_config(doc).problem;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "topological indices of discretized two-point boundary problems";
    m.attr("__version__") = config::kToolVersion;

    py::register_exception<Error>(m, "BvpIndexError");

    // ---- expressions ----
    py::class_<expr::Expression>(m, "Expression")
        .def_static("parse",
                    [](const std::string& text, const std::vector<std::string>& vars) {
                        return expr::Expression::parse(text, vars);
                    },
                    py::arg("text"), py::arg("variables"))
        .def("evaluate",
             [](const expr::Expression& e, const std::map<std::string, double>& bindings) {
                 return e.evaluate(bindings);
             })
        .def("pretty", &expr::Expression::pretty)
        .def_property_readonly("variables", &expr::Expression::variables);

    m.def("check_homogeneity",
          [](const expr::Expression& e, double order, const std::string& parity,
             const std::string& variable, int samples) {
              expr::HomogeneityDecl decl{order, expr::parity_from_string(parity), variable};
              const auto rep = expr::check_homogeneity(e, decl, samples);
              return py::make_tuple(rep.max_homogeneity_violation, rep.max_parity_violation,
                                    rep.passes());
          },
          py::arg("expression"), py::arg("order"), py::arg("parity") = "none",
          py::arg("variable") = "t", py::arg("samples") = 16);

    // ---- degree engines ----
    m.def("degree_1d",
          [](const std::function<linalg::Vector(const linalg::Vector&)>& f, double radius) {
              return degree::degree_1d(make_map(1, f, std::nullopt, false), radius);
          },
          py::arg("map"), py::arg("radius") = 1.0);
    m.def("degree_2d_winding",
          [](const std::function<linalg::Vector(const linalg::Vector&)>& f, double radius) {
              return degree::degree_2d_winding(make_map(2, f, std::nullopt, false), radius);
          },
          py::arg("map"), py::arg("radius") = 1.0);
    m.def("degree_nd_regular",
          [](const std::function<linalg::Vector(const linalg::Vector&)>& f, int dim,
             double radius) {
              const auto r = degree::degree_nd_regular(make_map(dim, f, std::nullopt, false), radius);
              return py::make_tuple(r.value, r.heuristic);
          },
          py::arg("map"), py::arg("dim"), py::arg("radius") = 1.0);
    m.def("degree_homogeneous",
          [](const std::function<linalg::Vector(const linalg::Vector&)>& f, int dim, double order,
             bool odd) {
              const auto r = degree::degree_homogeneous(make_map(dim, f, order, odd));
              return py::make_tuple(r.value, r.heuristic);
          },
          py::arg("map"), py::arg("dim"), py::arg("order"), py::arg("odd") = false);

    // ---- spectral reduction ----
    py::class_<reduction::SpectralStructure>(m, "SpectralStructure")
        .def_readonly("n", &reduction::SpectralStructure::n)
        .def_readonly("nu", &reduction::SpectralStructure::nu)
        .def_readonly("n0", &reduction::SpectralStructure::n0)
        .def_readonly("l", &reduction::SpectralStructure::l)
        .def_readonly("symmetric", &reduction::SpectralStructure::symmetric)
        .def_readonly("eigenvalues", &reduction::SpectralStructure::eigenvalues)
        .def_readonly("kernel", &reduction::SpectralStructure::kernel)
        .def_readonly("T", &reduction::SpectralStructure::T)
        .def_readonly("t_residual", &reduction::SpectralStructure::t_residual)
        .def_readonly("det_T", &reduction::SpectralStructure::det_T);

    py::class_<reduction::ReducedMap>(m, "ReducedMap")
        .def_readonly("dim", &reduction::ReducedMap::dim)
        .def_readonly("order", &reduction::ReducedMap::order)
        .def("__call__",
             [](const reduction::ReducedMap& rm, const linalg::Vector& c) { return rm.theta(c); });

    py::class_<reduction::IndexResult>(m, "IndexResult")
        .def_readonly("defined", &reduction::IndexResult::defined)
        .def_readonly("value", &reduction::IndexResult::value)
        .def_readonly("heuristic", &reduction::IndexResult::heuristic)
        .def_readonly("reason", &reduction::IndexResult::reason)
        .def_readonly("nu", &reduction::IndexResult::nu)
        .def_readonly("n0", &reduction::IndexResult::n0)
        .def_readonly("l", &reduction::IndexResult::l);

    py::class_<reduction::OperatorPencil>(m, "OperatorPencil")
        .def(py::init([](const linalg::Matrix& A, const linalg::Matrix& K) {
                 return reduction::OperatorPencil{A, K};
             }),
             py::arg("A"), py::arg("K"))
        .def_readonly("A", &reduction::OperatorPencil::A)
        .def_readonly("K", &reduction::OperatorPencil::K);

    m.def("analyze_pencil",
          [](const reduction::OperatorPencil& pencil, double tol, unsigned completion_seed) {
              reduction::AnalyzeOptions opt;
              opt.tol = tol;
              opt.completion_seed = completion_seed;
              return reduction::analyze_pencil(pencil, opt);
          },
          py::arg("pencil"), py::arg("tol") = 1e-8, py::arg("completion_seed") = 0);

    m.def("build_reduced_map",
          [](const reduction::SpectralStructure& s, const reduction::OperatorPencil& pencil,
             const std::function<linalg::Vector(const linalg::Vector&)>& assembler, double order,
             const std::string& parity) {
              return reduction::build_reduced_map(s, pencil, assembler, order,
                                                  expr::parity_from_string(parity));
          },
          py::arg("structure"), py::arg("pencil"), py::arg("assembler"), py::arg("order"),
          py::arg("parity") = "none");

    m.def("index_at_zero",
          [](const reduction::SpectralStructure& s, const reduction::ReducedMap* theta) {
              return reduction::index_at_zero(s, theta);
          },
          py::arg("structure"), py::arg("theta") = nullptr);
    m.def("index_at_infinity",
          [](const reduction::SpectralStructure& s, const reduction::ReducedMap* theta) {
              return reduction::index_at_infinity(s, theta);
          },
          py::arg("structure"), py::arg("theta") = nullptr);
    m.def("kronecker_check", &reduction::kronecker_check, py::arg("zero_indices"),
          py::arg("infinity_index"));

    // ---- discretization ----
    py::class_<fem::Discretization>(m, "Discretization")
        .def(py::init<int>(), py::arg("n_elements"))
        .def_property_readonly("dim", &fem::Discretization::dim)
        .def_property_readonly("n_elements", &fem::Discretization::n_elements)
        .def_property_readonly("stiffness", &fem::Discretization::stiffness)
        .def_property_readonly("mass", &fem::Discretization::mass)
        .def("interpolate", &fem::Discretization::interpolate);

    py::class_<fem::ProblemSpec>(m, "ProblemSpec")
        .def_static("from_json", &problem_from_json, py::arg("problem_json"))
        .def_readwrite("n_elements", &fem::ProblemSpec::n_elements)
        .def_readwrite("resonant_at_zero", &fem::ProblemSpec::resonant_at_zero)
        .def_readwrite("resonant_at_infinity", &fem::ProblemSpec::resonant_at_infinity);

    m.def("assemble_residual", &fem::assemble_residual, py::arg("disc"), py::arg("spec"),
          py::arg("u"));
    m.def("zero_side_pencil", &fem::zero_side_pencil, py::arg("spec"), py::arg("disc"),
          py::arg("tuning_amplitude") = 0.0);
    m.def("infinity_side_pencil", &fem::infinity_side_pencil, py::arg("spec"), py::arg("disc"));
    m.def("resonance_align",
          [](const reduction::OperatorPencil& pencil, const fem::Discretization& disc) {
              const auto r = fem::resonance_align(pencil, disc);
              return py::make_tuple(r.pencil, r.shift, r.kernel_dim);
          },
          py::arg("pencil"), py::arg("disc"));
    m.def("embedding_constant", &fem::embedding_constant, py::arg("disc"));
    m.def("monotonicity_probe", &fem::monotonicity_probe, py::arg("spec"),
          py::arg("sample_count") = 2000);
    m.def("dirichlet_zero_check", &fem::dirichlet_zero_check, py::arg("spec"), py::arg("disc"));

    // ---- verdicts / reports ----
    m.def("run_verdict",
          [](const std::string& id, const fem::ProblemSpec& spec, int n_elements) {
              const fem::Discretization disc(n_elements > 0 ? n_elements : spec.n_elements);
              const auto v = verdicts::run_verdict(id, spec, disc);
              nlohmann::json j;
              j["id"] = v.id;
              j["guard_passed"] = v.guard_passed;
              j["refusal_reason"] = v.refusal_reason;
              j["conclusion"] = verdicts::to_string(v.conclusion);
              nlohmann::json checks = nlohmann::json::array();
              for (const auto& c : v.checklist)
                  checks.push_back(
                      {{"name", c.name}, {"passed", c.passed}, {"evidence", c.evidence}});
              j["checklist"] = checks;
              return j.dump();
          },
          py::arg("id"), py::arg("spec"), py::arg("n_elements") = -1);

    m.def("find_solutions_newton",
          [](const fem::ProblemSpec& spec, int n_elements, int starts, unsigned seed) {
              const fem::Discretization disc(n_elements > 0 ? n_elements : spec.n_elements);
              const auto set = oracle::find_solutions_newton(spec, disc, starts, seed);
              std::vector<py::tuple> out;
              for (const auto& s : set.solutions)
                  out.push_back(py::make_tuple(s.u, s.residual_norm, s.max_norm));
              return out;
          },
          py::arg("spec"), py::arg("n_elements") = -1, py::arg("starts") = 8,
          py::arg("seed") = 1234);
    m.def("find_solutions_shooting",
          [](const fem::ProblemSpec& spec, int n_elements, double s_lo, double s_hi, int grid) {
              const fem::Discretization disc(n_elements > 0 ? n_elements : spec.n_elements);
              const auto set = oracle::find_solutions_shooting(spec, disc, s_lo, s_hi, grid);
              std::vector<py::tuple> out;
              for (const auto& s : set.solutions)
                  out.push_back(py::make_tuple(s.u, s.residual_norm, s.max_norm));
              return out;
          },
          py::arg("spec"), py::arg("n_elements") = -1, py::arg("s_lo") = -20.0,
          py::arg("s_hi") = 20.0, py::arg("grid") = 401);

    m.def("analyze_json",
          [](const std::string& config_text) {
              const auto outcome = report::analyze(config::parse_config_text(config_text));
              return py::make_tuple(outcome.report.to_string(), outcome.exit_code);
          },
          py::arg("config_json"));
    m.def("spectrum_json",
          [](const std::string& config_text) {
              const auto outcome = report::spectrum(config::parse_config_text(config_text));
              return py::make_tuple(outcome.report.to_string(), outcome.exit_code);
          },
          py::arg("config_json"));

    m.def("selftest_ids", [] {
        std::vector<std::string> ids;
        for (const auto& [id, _] : acceptance::catalog()) ids.push_back(id);
        return ids;
    });
    m.def("run_acceptance",
          [](const std::string& id) {
              const auto r = acceptance::run_one(id);
              return py::make_tuple(r.passed, r.detail);
          },
          py::arg("id"));
}
