#include "bvpindex/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "bvpindex/verdicts.hpp"

namespace bvpindex::config {

using nlohmann::json;

std::string to_string(OracleMethod m) {
    switch (m) {
        case OracleMethod::shooting: return "shooting";
        case OracleMethod::newton: return "newton";
        default: return "both";
    }
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& pointer) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key))
            throw ConfigError("unknown key '" + key + "'", pointer + "/" + key);
}

const json* get(const json& obj, const std::string& key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

std::string as_string(const json& v, const std::string& pointer) {
    if (!v.is_string()) throw ConfigError("expected a string", pointer);
    return v.get<std::string>();
}

double as_number(const json& v, const std::string& pointer) {
    if (!v.is_number()) throw ConfigError("expected a number", pointer);
    return v.get<double>();
}

bool as_bool(const json& v, const std::string& pointer) {
    if (!v.is_boolean()) throw ConfigError("expected a boolean", pointer);
    return v.get<bool>();
}

expr::Expression parse_expr(const json& v, const std::vector<std::string>& vars,
                            const std::string& pointer) {
    const std::string text = as_string(v, pointer);
    try {
        return expr::Expression::parse(text, vars);
    } catch (const ParseError& e) {
        throw ConfigError(std::string("expression error: ") + e.what(), pointer);
    }
}

fem::PrincipalPart parse_part(const json& v, const std::string& var, bool zero_side,
                              const std::string& pointer) {
    if (!v.is_object()) throw ConfigError("expected an object {expr, order, parity}", pointer);
    reject_unknown(v, {"expr", "order", "parity"}, pointer);
    const json* ex = get(v, "expr");
    const json* ord = get(v, "order");
    if (!ex || !ord) throw ConfigError("principal part needs 'expr' and 'order'", pointer);

    fem::PrincipalPart part;
    part.expression = parse_expr(*ex, {"x", var}, pointer + "/expr");
    part.decl.order = as_number(*ord, pointer + "/order");
    part.decl.variable = var;
    if (const json* par = get(v, "parity")) {
        try {
            part.decl.parity = expr::parity_from_string(as_string(*par, pointer + "/parity"));
        } catch (const Error& e) {
            throw ConfigError(e.what(), pointer + "/parity");
        }
    }
    if (part.decl.order < 0.0) throw ConfigError("order must be >= 0", pointer + "/order");
    if (zero_side && !(part.decl.order > 1.0))
        throw ConfigError("zero-side principal part must have order > 1", pointer + "/order");
    if (!zero_side && !(part.decl.order < 1.0))
        throw ConfigError("infinity-side principal part must have order in [0, 1)",
                          pointer + "/order");
    const auto rep = expr::check_homogeneity(part.expression, part.decl);
    if (!rep.passes())
        throw ConfigError("declared homogeneity/parity fails numerically (violations " +
                              std::to_string(rep.max_homogeneity_violation) + " / " +
                              std::to_string(rep.max_parity_violation) + ")",
                          pointer);
    return part;
}

}  // namespace

ConfigDocument parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object", "");
    reject_unknown(doc, {"problem", "mesh", "analysis"}, "");

    const json* problem = get(doc, "problem");
    if (!problem || !problem->is_object())
        throw ConfigError("missing 'problem' object", "/problem");
    const json* mesh = get(doc, "mesh");
    if (!mesh || !mesh->is_object()) throw ConfigError("missing 'mesh' object", "/mesh");

    ConfigDocument out;

    // ---- mesh ----
    reject_unknown(*mesh, {"n_elements"}, "/mesh");
    const json* ne = get(*mesh, "n_elements");
    if (!ne || !ne->is_number_integer())
        throw ConfigError("mesh needs integer 'n_elements'", "/mesh/n_elements");
    out.problem.n_elements = ne->get<int>();
    if (out.problem.n_elements < 8)
        throw ConfigError("n_elements must be >= 8", "/mesh/n_elements");

    // ---- problem ----
    reject_unknown(*problem,
                   {"p", "f", "q", "g", "fprime0", "qprime0", "gprime0", "fprimeInf",
                    "qprimeInf", "gprimeInf", "fk", "qk", "gk", "ql", "gl",
                    "resonant_at_zero", "resonant_at_infinity", "delta", "qprime0_tuning"},
                   "/problem");
    auto& p = out.problem;
    p.p = problem->contains("p") ? parse_expr((*problem)["p"], {"x"}, "/problem/p")
                                 : expr::Expression::parse("1", {"x"});
    if (const json* v = get(*problem, "f")) p.f = parse_expr(*v, {"x", "s"}, "/problem/f");
    if (const json* v = get(*problem, "q")) p.q = parse_expr(*v, {"x", "t"}, "/problem/q");
    if (const json* v = get(*problem, "g")) p.g = parse_expr(*v, {"x", "t"}, "/problem/g");
    if (const json* v = get(*problem, "fprime0"))
        p.fprime0 = parse_expr(*v, {"x"}, "/problem/fprime0");
    if (const json* v = get(*problem, "qprime0"))
        p.qprime0 = parse_expr(*v, {"x"}, "/problem/qprime0");
    if (const json* v = get(*problem, "gprime0"))
        p.gprime0 = parse_expr(*v, {"x"}, "/problem/gprime0");
    if (const json* v = get(*problem, "fprimeInf"))
        p.fprimeInf = parse_expr(*v, {"x"}, "/problem/fprimeInf");
    if (const json* v = get(*problem, "qprimeInf"))
        p.qprimeInf = parse_expr(*v, {"x"}, "/problem/qprimeInf");
    if (const json* v = get(*problem, "gprimeInf"))
        p.gprimeInf = parse_expr(*v, {"x"}, "/problem/gprimeInf");
    if (const json* v = get(*problem, "fk")) p.fk = parse_part(*v, "s", false, "/problem/fk");
    if (const json* v = get(*problem, "qk")) p.qk = parse_part(*v, "t", false, "/problem/qk");
    if (const json* v = get(*problem, "gk")) p.gk = parse_part(*v, "t", false, "/problem/gk");
    if (const json* v = get(*problem, "ql")) p.ql = parse_part(*v, "t", true, "/problem/ql");
    if (const json* v = get(*problem, "gl")) p.gl = parse_part(*v, "t", true, "/problem/gl");
    if (const json* v = get(*problem, "resonant_at_zero"))
        p.resonant_at_zero = as_bool(*v, "/problem/resonant_at_zero");
    if (const json* v = get(*problem, "resonant_at_infinity"))
        p.resonant_at_infinity = as_bool(*v, "/problem/resonant_at_infinity");
    if (const json* v = get(*problem, "delta")) p.delta = as_number(*v, "/problem/delta");
    if (const json* v = get(*problem, "qprime0_tuning")) {
        if (p.qprime0)
            throw ConfigError("declare either qprime0 or qprime0_tuning, not both",
                              "/problem/qprime0_tuning");
        if (!v->is_object())
            throw ConfigError("expected an object {shape, range}", "/problem/qprime0_tuning");
        reject_unknown(*v, {"shape", "range"}, "/problem/qprime0_tuning");
        const json* shape = get(*v, "shape");
        const json* range = get(*v, "range");
        if (!shape || !range)
            throw ConfigError("tuning needs 'shape' and 'range'", "/problem/qprime0_tuning");
        fem::TuningSpec tune;
        tune.shape = parse_expr(*shape, {"x"}, "/problem/qprime0_tuning/shape");
        if (!range->is_array() || range->size() != 2)
            throw ConfigError("range must be [lo, hi]", "/problem/qprime0_tuning/range");
        tune.range_lo = as_number((*range)[0], "/problem/qprime0_tuning/range/0");
        tune.range_hi = as_number((*range)[1], "/problem/qprime0_tuning/range/1");
        if (!(tune.range_lo < tune.range_hi))
            throw ConfigError("range must satisfy lo < hi", "/problem/qprime0_tuning/range");
        p.qprime0_tuning = std::move(tune);
    }

    // ---- analysis ----
    if (const json* analysis = get(doc, "analysis")) {
        if (!analysis->is_object()) throw ConfigError("expected an object", "/analysis");
        reject_unknown(*analysis, {"theorems", "tolerance", "verify_with_oracle", "oracle"},
                       "/analysis");
        auto& a = out.analysis;
        if (const json* th = get(*analysis, "theorems")) {
            if (th->is_string()) {
                if (th->get<std::string>() != "auto")
                    throw ConfigError("theorems must be \"auto\" or a list of verdict ids",
                                      "/analysis/theorems");
                a.auto_theorems = true;
            } else if (th->is_array()) {
                a.auto_theorems = false;
                const auto& known = verdicts::verdict_ids();
                for (std::size_t i = 0; i < th->size(); ++i) {
                    const std::string id =
                        as_string((*th)[i], "/analysis/theorems/" + std::to_string(i));
                    if (std::find(known.begin(), known.end(), id) == known.end())
                        throw ConfigError("unknown verdict id '" + id + "'",
                                          "/analysis/theorems/" + std::to_string(i));
                    a.theorems.push_back(id);
                }
                if (a.theorems.empty())
                    throw ConfigError("theorem list must not be empty", "/analysis/theorems");
            } else {
                throw ConfigError("theorems must be \"auto\" or a list", "/analysis/theorems");
            }
        }
        if (const json* tol = get(*analysis, "tolerance")) {
            a.tolerance = as_number(*tol, "/analysis/tolerance");
            if (!(a.tolerance > 0.0))
                throw ConfigError("tolerance must be positive", "/analysis/tolerance");
        }
        if (const json* vo = get(*analysis, "verify_with_oracle"))
            a.verify_with_oracle = as_bool(*vo, "/analysis/verify_with_oracle");
        if (const json* oc = get(*analysis, "oracle")) {
            if (!oc->is_object()) throw ConfigError("expected an object", "/analysis/oracle");
            reject_unknown(*oc, {"method", "s_range", "starts", "seed"}, "/analysis/oracle");
            if (const json* m = get(*oc, "method")) {
                const std::string s = as_string(*m, "/analysis/oracle/method");
                if (s == "shooting") a.oracle.method = OracleMethod::shooting;
                else if (s == "newton") a.oracle.method = OracleMethod::newton;
                else if (s == "both") a.oracle.method = OracleMethod::both;
                else
                    throw ConfigError("method must be shooting|newton|both",
                                      "/analysis/oracle/method");
            }
            if (const json* r = get(*oc, "s_range")) {
                if (!r->is_array() || r->size() != 2)
                    throw ConfigError("s_range must be [lo, hi]", "/analysis/oracle/s_range");
                a.oracle.s_lo = as_number((*r)[0], "/analysis/oracle/s_range/0");
                a.oracle.s_hi = as_number((*r)[1], "/analysis/oracle/s_range/1");
                if (!(a.oracle.s_lo < a.oracle.s_hi))
                    throw ConfigError("s_range must satisfy lo < hi", "/analysis/oracle/s_range");
            }
            if (const json* st = get(*oc, "starts")) {
                if (!st->is_number_integer() || st->get<int>() < 0)
                    throw ConfigError("starts must be a nonnegative integer",
                                      "/analysis/oracle/starts");
                a.oracle.starts = st->get<int>();
            }
            if (const json* sd = get(*oc, "seed")) {
                if (!sd->is_number_integer() || sd->get<long long>() < 0)
                    throw ConfigError("seed must be a nonnegative integer",
                                      "/analysis/oracle/seed");
                a.oracle.seed = static_cast<unsigned>(sd->get<long long>());
            }
        }
    }

    out.normalized = doc;
    return out;
}

ConfigDocument parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what(), "");
    }
    return parse_config(doc);
}

ConfigDocument parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config_text(text);
}

}  // namespace bvpindex::config
