#include "bvpindex/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace bvpindex::expr {

std::string to_string(Parity p) {
    switch (p) {
        case Parity::odd: return "odd";
        case Parity::even: return "even";
        default: return "none";
    }
}

Parity parity_from_string(const std::string& s) {
    if (s == "odd") return Parity::odd;
    if (s == "even") return Parity::even;
    if (s == "none") return Parity::none;
    throw Error("unknown parity '" + s + "' (expected odd|even|none)");
}

namespace {

struct Catalog {
    const char* name;
    int arity;
};

constexpr Catalog kCatalog[] = {
    {"sin", 1}, {"cos", 1}, {"tan", 1}, {"atan", 1}, {"exp", 1}, {"log", 1},
    {"sqrt", 1}, {"abs", 1}, {"sign", 1}, {"tanh", 1}, {"min", 2}, {"max", 2},
};

int function_id(std::string_view name) {
    for (int i = 0; i < static_cast<int>(std::size(kCatalog)); ++i)
        if (name == kCatalog[i].name) return i;
    return -1;
}

enum class Tok { number, name, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
    Tok kind;
    double value = 0.0;
    std::string name;
    int pos = 0;
};

struct Lexer {
    std::string_view text;
    std::size_t i = 0;

    Token next() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        const int pos = static_cast<int>(i);
        if (i >= text.size()) return {Tok::end, 0.0, "", pos};
        const char c = text[i];
        switch (c) {
            case '+': ++i; return {Tok::plus, 0, "+", pos};
            case '-': ++i; return {Tok::minus, 0, "-", pos};
            case '*': ++i; return {Tok::star, 0, "*", pos};
            case '/': ++i; return {Tok::slash, 0, "/", pos};
            case '^': ++i; return {Tok::caret, 0, "^", pos};
            case '(': ++i; return {Tok::lparen, 0, "(", pos};
            case ')': ++i; return {Tok::rparen, 0, ")", pos};
            case ',': ++i; return {Tok::comma, 0, ",", pos};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.')) ++j;
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
                    ++k;
                    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                    j = k;
                }
            }
            const std::string s(text.substr(i, j - i));
            char* endp = nullptr;
            const double v = std::strtod(s.c_str(), &endp);
            if (endp == s.c_str() || *endp != '\0')
                throw ParseError("bad numeric literal '" + s + "'", i);
            i = j;
            return {Tok::number, v, s, pos};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            Token t{Tok::name, 0, std::string(text.substr(i, j - i)), pos};
            i = j;
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
};

}  // namespace

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& variables)
        : lex_{text}, out_() {
        out_.text_ = std::string(text);
        out_.vars_ = variables;
        advance();
    }

    Expression run() {
        if (cur_.kind == Tok::end) throw ParseError("empty expression", 0);
        out_.root_ = parse_expr();
        if (cur_.kind != Tok::end)
            throw ParseError("unexpected token '" + cur_.name + "'", cur_.pos);
        return std::move(out_);
    }

private:
    using Node = Expression::Node;
    using Kind = Expression::Kind;
    using Fn = Expression::Fn;

    void advance() { cur_ = lex_.next(); }

    int add(Node n) {
        out_.nodes_.push_back(n);
        return static_cast<int>(out_.nodes_.size()) - 1;
    }

    int parse_expr() {
        int lhs = parse_term();
        while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
            const bool plus = cur_.kind == Tok::plus;
            const int pos = cur_.pos;
            advance();
            const int rhs = parse_term();
            lhs = add({plus ? Kind::add : Kind::sub, Fn::sin, 0, -1, lhs, rhs, pos});
        }
        return lhs;
    }

    int parse_term() {
        int lhs = parse_factor();
        while (cur_.kind == Tok::star || cur_.kind == Tok::slash) {
            const bool mul = cur_.kind == Tok::star;
            const int pos = cur_.pos;
            advance();
            const int rhs = parse_factor();
            lhs = add({mul ? Kind::mul : Kind::div, Fn::sin, 0, -1, lhs, rhs, pos});
        }
        return lhs;
    }

    int parse_factor() {
        if (cur_.kind == Tok::minus) {
            const int pos = cur_.pos;
            advance();
            const int inner = parse_factor();
            return add({Kind::negate, Fn::sin, 0, -1, inner, -1, pos});
        }
        return parse_power();
    }

    int parse_power() {
        const int base = parse_atom();
        if (cur_.kind == Tok::caret) {
            const int pos = cur_.pos;
            advance();
            const int exponent = parse_factor();  // right associative
            return add({Kind::pow, Fn::sin, 0, -1, base, exponent, pos});
        }
        return base;
    }

    int parse_atom() {
        const Token t = cur_;
        switch (t.kind) {
            case Tok::number:
                advance();
                return add({Kind::number, Fn::sin, t.value, -1, -1, -1, t.pos});
            case Tok::lparen: {
                advance();
                const int inner = parse_expr();
                expect(Tok::rparen, ")");
                return inner;
            }
            case Tok::name:
                advance();
                if (cur_.kind == Tok::lparen) return parse_call(t);
                return parse_symbol(t);
            default:
                throw ParseError("syntax error at token '" + t.name + "'", t.pos);
        }
    }

    int parse_symbol(const Token& t) {
        if (t.name == "pi")
            return add({Kind::constant, Fn::sin, std::numbers::pi, 0, -1, -1, t.pos});
        if (t.name == "e")
            return add({Kind::constant, Fn::sin, std::numbers::e, 1, -1, -1, t.pos});
        const auto it = std::find(out_.vars_.begin(), out_.vars_.end(), t.name);
        if (it == out_.vars_.end())
            throw ParseError("unknown identifier '" + t.name + "'", t.pos);
        const int slot = static_cast<int>(it - out_.vars_.begin());
        return add({Kind::variable, Fn::sin, 0, slot, -1, -1, t.pos});
    }

    int parse_call(const Token& t) {
        const int fid = function_id(t.name);
        if (fid < 0) throw ParseError("unknown function '" + t.name + "'", t.pos);
        const int arity = kCatalog[fid].arity;
        expect(Tok::lparen, "(");
        const int a = parse_expr();
        int b = -1;
        if (cur_.kind == Tok::comma) {
            advance();
            b = parse_expr();
            if (arity != 2)
                throw ParseError("function '" + t.name + "' takes 1 argument", t.pos);
        } else if (arity == 2) {
            throw ParseError("function '" + t.name + "' takes 2 arguments", t.pos);
        }
        expect(Tok::rparen, ")");
        return add({arity == 1 ? Kind::call1 : Kind::call2, static_cast<Fn>(fid), 0, -1, a, b, t.pos});
    }

    void expect(Tok k, const char* what) {
        if (cur_.kind != k)
            throw ParseError(std::string("expected '") + what + "', got '" + cur_.name + "'", cur_.pos);
        advance();
    }

    Lexer lex_;
    Token cur_;
    Expression out_;
};

Expression Expression::parse(std::string_view text, const std::vector<std::string>& variables) {
    return Parser(text, variables).run();
}

double Expression::evaluate(std::span<const double> values) const {
    if (root_ < 0) throw Error("evaluating empty expression");
    if (values.size() < vars_.size())
        throw Error("missing variable bindings");
    return eval_node(root_, values);
}

double Expression::evaluate(const std::map<std::string, double>& bindings) const {
    std::vector<double> values(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const auto it = bindings.find(vars_[i]);
        if (it == bindings.end()) throw Error("missing binding for '" + vars_[i] + "'");
        values[i] = it->second;
    }
    return evaluate(values);
}

double Expression::eval_node(int idx, std::span<const double> values) const {
    const Node& n = nodes_[idx];
    switch (n.kind) {
        case Kind::number:
        case Kind::constant:
            return n.value;
        case Kind::variable:
            return values[n.symbol];
        case Kind::negate:
            return -eval_node(n.a, values);
        case Kind::add:
            return eval_node(n.a, values) + eval_node(n.b, values);
        case Kind::sub:
            return eval_node(n.a, values) - eval_node(n.b, values);
        case Kind::mul:
            return eval_node(n.a, values) * eval_node(n.b, values);
        case Kind::div: {
            const double num = eval_node(n.a, values);
            const double den = eval_node(n.b, values);
            if (den == 0.0) throw EvalError("division by zero", n.pos);
            return num / den;
        }
        case Kind::pow: {
            const double base = eval_node(n.a, values);
            const double ex = eval_node(n.b, values);
            if (base < 0.0 && ex != std::rint(ex))
                throw EvalError("fractional power of negative base", n.pos);
            if (base == 0.0 && ex < 0.0)
                throw EvalError("zero raised to negative power", n.pos);
            return std::pow(base, ex);
        }
        case Kind::call1: {
            const double a = eval_node(n.a, values);
            switch (n.fn) {
                case Fn::sin: return std::sin(a);
                case Fn::cos: return std::cos(a);
                case Fn::tan: return std::tan(a);
                case Fn::atan: return std::atan(a);
                case Fn::exp: return std::exp(a);
                case Fn::log:
                    if (a <= 0.0) throw EvalError("log of non-positive argument", n.pos);
                    return std::log(a);
                case Fn::sqrt:
                    if (a < 0.0) throw EvalError("sqrt of negative argument", n.pos);
                    return std::sqrt(a);
                case Fn::abs: return std::fabs(a);
                case Fn::sign: return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
                case Fn::tanh: return std::tanh(a);
                default: break;
            }
            throw EvalError("bad unary function", n.pos);
        }
        case Kind::call2: {
            const double a = eval_node(n.a, values);
            const double b = eval_node(n.b, values);
            return n.fn == Fn::min ? std::min(a, b) : std::max(a, b);
        }
    }
    throw EvalError("bad node", 0);
}

namespace {
// precedence: add/sub 1, mul/div 2, unary minus 3, pow 4, atom 5
int node_prec(Expression::Kind k) {
    using K = Expression::Kind;
    switch (k) {
        case K::add:
        case K::sub: return 1;
        case K::mul:
        case K::div: return 2;
        case K::negate: return 3;
        case K::pow: return 4;
        default: return 5;
    }
}

void print_number(double v, std::string& out) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}
}  // namespace

void Expression::print_node(int idx, int parent_prec, bool right_operand, std::string& out) const {
    static const char* fn_names[] = {"sin", "cos", "tan", "atan", "exp", "log",
                                     "sqrt", "abs", "sign", "tanh", "min", "max"};
    const Node& n = nodes_[idx];
    const int prec = node_prec(n.kind);
    const bool parens = prec < parent_prec || (prec == parent_prec && right_operand && prec <= 2);
    if (parens) out += '(';
    switch (n.kind) {
        case Kind::number: print_number(n.value, out); break;
        case Kind::constant: out += (n.symbol == 0 ? "pi" : "e"); break;
        case Kind::variable: out += vars_[n.symbol]; break;
        case Kind::negate:
            out += '-';
            print_node(n.a, prec, true, out);
            break;
        case Kind::add:
        case Kind::sub:
            print_node(n.a, prec, false, out);
            out += (n.kind == Kind::add ? " + " : " - ");
            print_node(n.b, prec, true, out);
            break;
        case Kind::mul:
        case Kind::div:
            print_node(n.a, prec, false, out);
            out += (n.kind == Kind::mul ? "*" : "/");
            print_node(n.b, prec, true, out);
            break;
        case Kind::pow:
            print_node(n.a, prec + 1, false, out);  // base binds tighter
            out += '^';
            print_node(n.b, prec, true, out);
            break;
        case Kind::call1:
        case Kind::call2:
            out += fn_names[static_cast<int>(n.fn)];
            out += '(';
            print_node(n.a, 0, false, out);
            if (n.b >= 0) {
                out += ", ";
                print_node(n.b, 0, false, out);
            }
            out += ')';
            break;
    }
    if (parens) out += ')';
}

std::string Expression::pretty() const {
    std::string out;
    if (root_ >= 0) print_node(root_, 0, false, out);
    return out;
}

bool Expression::nodes_equal(int i, const Expression& other, int j) const {
    const Node& a = nodes_[i];
    const Node& b = other.nodes_[j];
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Kind::number: return a.value == b.value;
        case Kind::constant: return a.symbol == b.symbol;
        case Kind::variable: return a.symbol == b.symbol;
        case Kind::negate: return nodes_equal(a.a, other, b.a);
        case Kind::call1:
            return a.fn == b.fn && nodes_equal(a.a, other, b.a);
        case Kind::call2:
            return a.fn == b.fn && nodes_equal(a.a, other, b.a) && nodes_equal(a.b, other, b.b);
        default:
            return nodes_equal(a.a, other, b.a) && nodes_equal(a.b, other, b.b);
    }
}

bool Expression::same_structure(const Expression& other) const {
    if (root_ < 0 || other.root_ < 0) return root_ == other.root_;
    if (vars_ != other.vars_) return false;
    return nodes_equal(root_, other, other.root_);
}

HomogeneityReport check_homogeneity(const Expression& e, const HomogeneityDecl& decl,
                                    int sample_count) {
    if (sample_count < 16) sample_count = 16;
    const auto& vars = e.variables();
    int hvar = -1;
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == decl.variable) hvar = static_cast<int>(i);

    std::vector<double> tgrid;
    for (int j = -3; j <= 3; ++j) {
        tgrid.push_back(std::ldexp(1.0, j));
        tgrid.push_back(-std::ldexp(1.0, j));
    }
    const double cs[] = {0.5, 2.0, 10.0};

    HomogeneityReport rep;
    std::vector<double> values(vars.size(), 0.0);
    auto eval_at = [&](double x, double t) {
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (static_cast<int>(i) == hvar) values[i] = t;
            else values[i] = x;  // every non-homogeneity variable ranges over [0,1]
        }
        return e.evaluate(values);
    };
    auto rel = [](double a, double b) {
        const double num = std::fabs(a - b);
        if (num == 0.0) return 0.0;
        const double den = std::max(std::fabs(a), std::fabs(b));
        return den > 0.0 ? num / den : num;
    };

    for (int ix = 0; ix < sample_count; ++ix) {
        const double x = sample_count == 1 ? 0.0 : double(ix) / double(sample_count - 1);
        for (const double t : tgrid) {
            const double ht = eval_at(x, t);
            for (const double c : cs) {
                const double hct = eval_at(x, c * t);
                const double scaled = std::pow(c, decl.order) * ht;
                rep.max_homogeneity_violation =
                    std::max(rep.max_homogeneity_violation, rel(hct, scaled));
            }
            if (decl.parity != Parity::none) {
                const double hmt = eval_at(x, -t);
                const double expect = decl.parity == Parity::odd ? -ht : ht;
                rep.max_parity_violation = std::max(rep.max_parity_violation, rel(hmt, expect));
            }
        }
    }
    return rep;
}

}  // namespace bvpindex::expr
