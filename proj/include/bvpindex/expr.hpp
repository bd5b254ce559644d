#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bvpindex/errors.hpp"

namespace bvpindex::expr {

enum class Parity { odd, even, none };

std::string to_string(Parity p);
Parity parity_from_string(const std::string& s);

/// Declared positive homogeneity of a scalar term: h(c*t) = c^order * h(t) for c > 0.
struct HomogeneityDecl {
    double order = 0.0;
    Parity parity = Parity::none;
    std::string variable = "t";
};

struct HomogeneityReport {
    double max_homogeneity_violation = 0.0;
    double max_parity_violation = 0.0;
    bool passes(double tol = 1e-8) const {
        return max_homogeneity_violation <= tol && max_parity_violation <= tol;
    }
};

/// Immutable parsed arithmetic expression over a fixed variable set.
/// Evaluation is pure and safe to call concurrently.
class Expression {
public:
    Expression() = default;

    /// Parse `text` with the declared variable names. Grammar:
    ///   expr   := term (("+"|"-") term)*
    ///   term   := factor (("*"|"/") factor)*
    ///   factor := "-" factor | power
    ///   power  := atom ("^" factor)?
    ///   atom   := number | name | name "(" expr ("," expr)? ")" | "(" expr ")"
    static Expression parse(std::string_view text, const std::vector<std::string>& variables);

    /// Values aligned with the variable list given at parse time.
    double evaluate(std::span<const double> values) const;
    double evaluate(const std::map<std::string, double>& bindings) const;

    /// Fast path for the two-variable expressions used by the assembler.
    double eval2(double v0, double v1) const {
        const double vals[2] = {v0, v1};
        return evaluate(std::span<const double>(vals, vars_.size()));
    }

    const std::vector<std::string>& variables() const { return vars_; }
    const std::string& text() const { return text_; }
    bool empty() const { return nodes_.empty(); }

    /// Precedence-aware rendering; parsing the output reproduces the tree.
    std::string pretty() const;

    /// Structural tree equality (node layout independent).
    bool same_structure(const Expression& other) const;

    enum class Kind : unsigned char {
        number, constant, variable, negate, add, sub, mul, div, pow, call1, call2
    };
    enum class Fn : unsigned char {
        sin, cos, tan, atan, exp, log, sqrt, abs, sign, tanh, min, max
    };

private:
    friend class Parser;

    struct Node {
        Kind kind;
        Fn fn = Fn::sin;
        double value = 0.0;   // number, or constant value
        int symbol = -1;      // variable slot, or constant id (0 = pi, 1 = e)
        int a = -1, b = -1;
        int pos = 0;          // source offset, for diagnostics
    };

    double eval_node(int idx, std::span<const double> values) const;
    void print_node(int idx, int parent_prec, bool right_operand, std::string& out) const;
    bool nodes_equal(int i, const Expression& other, int j) const;

    std::vector<Node> nodes_;
    int root_ = -1;
    std::vector<std::string> vars_;
    std::string text_;
};

/// Sample-based test of a homogeneity/parity declaration on the deterministic grid
/// x in [0,1], t in {±2^j : j=-3..3}, c in {0.5, 2, 10}.  A declaration passes when
/// both worst-case relative deviations are <= 1e-8.
HomogeneityReport check_homogeneity(const Expression& e, const HomogeneityDecl& decl,
                                    int sample_count = 16);

}  // namespace bvpindex::expr
