#include "curveflow/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "curveflow/error.hpp"

namespace curveflow {

enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Var { Theta, S, Absx, Psi };
enum class Fn { Sin, Cos, Tan, Cosh, Sinh, Exp, Log, Sqrt };

struct Expression::Node {
    Op op;
    double value = 0.0;
    Var var = Var::Theta;
    Fn fn = Fn::Sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

const char* fn_name(Fn f) {
    switch (f) {
        case Fn::Sin: return "sin";
        case Fn::Cos: return "cos";
        case Fn::Tan: return "tan";
        case Fn::Cosh: return "cosh";
        case Fn::Sinh: return "sinh";
        case Fn::Exp: return "exp";
        case Fn::Log: return "log";
        case Fn::Sqrt: return "sqrt";
    }
    return "?";
}

const char* var_name(Var v) {
    switch (v) {
        case Var::Theta: return "theta";
        case Var::S: return "s";
        case Var::Absx: return "absx";
        case Var::Psi: return "psi";
    }
    return "?";
}

NodePtr make_number(double v) {
    auto n = std::make_shared<Expression::Node>();
    n->op = Op::Number;
    n->value = v;
    return n;
}

NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        NodePtr e = expression();
        skip_space();
        if (pos_ < text_.size()) fail("operator or end of input", "unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& expected, const std::string& what) const {
        throw ParseError(pos_, expected, what);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expression() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = make_binary(Op::Add, lhs, term());
            else if (accept('-'))
                lhs = make_binary(Op::Sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = make_binary(Op::Mul, lhs, unary());
            else if (accept('/'))
                lhs = make_binary(Op::Div, lhs, unary());
            else
                return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) {
            auto n = std::make_shared<Expression::Node>();
            n->op = Op::Neg;
            n->lhs = unary();
            return n;
        }
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make_binary(Op::Pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("expression", "unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expression();
            if (!accept(')')) fail("')'", "unbalanced parenthesis");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || static_cast<unsigned char>(c) >= 0x80)
            return identifier();
        fail("expression", std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc()) fail("number", "malformed number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return make_number(v);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size()) {
            const auto u = static_cast<unsigned char>(text_[pos_]);
            if (std::isalnum(u) || u == '_' || u >= 0x80)
                ++pos_;
            else
                break;
        }
        const std::string_view id = text_.substr(start, pos_ - start);
        static constexpr std::pair<const char*, Fn> fns[] = {
            {"sin", Fn::Sin},   {"cos", Fn::Cos}, {"tan", Fn::Tan}, {"cosh", Fn::Cosh},
            {"sinh", Fn::Sinh}, {"exp", Fn::Exp}, {"log", Fn::Log}, {"sqrt", Fn::Sqrt}};
        for (const auto& [name, f] : fns) {
            if (id == name) {
                if (!accept('(')) fail("'('", "function call needs parentheses");
                auto n = std::make_shared<Expression::Node>();
                n->op = Op::Call;
                n->fn = f;
                n->lhs = expression();
                if (!accept(')')) fail("')'", "unbalanced parenthesis");
                return n;
            }
        }
        auto n = std::make_shared<Expression::Node>();
        n->op = Op::Var;
        if (id == "theta" || id == "\xCE\xB8")
            n->var = Var::Theta;
        else if (id == "s")
            n->var = Var::S;
        else if (id == "absx")
            n->var = Var::Absx;
        else if (id == "psi")
            n->var = Var::Psi;
        else if (id == "pi")
            return make_number(std::numbers::pi);
        else {
            pos_ = start;
            fail("variable or function", "unknown identifier '" + std::string(id) + "'");
        }
        return n;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double eval_node(const Expression::Node& n, const ExprVariables& v) {
    switch (n.op) {
        case Op::Number: return n.value;
        case Op::Var:
            switch (n.var) {
                case Var::Theta: return v.theta;
                case Var::S: return v.s;
                case Var::Absx: return v.absx;
                case Var::Psi: return v.psi;
            }
            return 0.0;
        case Op::Neg: return -eval_node(*n.lhs, v);
        case Op::Add: return eval_node(*n.lhs, v) + eval_node(*n.rhs, v);
        case Op::Sub: return eval_node(*n.lhs, v) - eval_node(*n.rhs, v);
        case Op::Mul: return eval_node(*n.lhs, v) * eval_node(*n.rhs, v);
        case Op::Div: {
            const double d = eval_node(*n.rhs, v);
            if (d == 0.0) throw DomainError("division by zero in expression");
            return eval_node(*n.lhs, v) / d;
        }
        case Op::Pow: return std::pow(eval_node(*n.lhs, v), eval_node(*n.rhs, v));
        case Op::Call: {
            const double a = eval_node(*n.lhs, v);
            switch (n.fn) {
                case Fn::Sin: return std::sin(a);
                case Fn::Cos: return std::cos(a);
                case Fn::Tan: return std::tan(a);
                case Fn::Cosh: return std::cosh(a);
                case Fn::Sinh: return std::sinh(a);
                case Fn::Exp: return std::exp(a);
                case Fn::Log:
                    if (!(a > 0.0)) throw DomainError("log of non-positive value in expression");
                    return std::log(a);
                case Fn::Sqrt:
                    if (a < 0.0) throw DomainError("sqrt of negative value in expression");
                    return std::sqrt(a);
            }
        }
    }
    return 0.0;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

void print_node(const Expression::Node& n, std::string& out) {
    switch (n.op) {
        case Op::Number:
            // Negative literals are printed as a negation so they re-parse.
            if (std::signbit(n.value)) {
                out += "(-";
                out += format_number(-n.value);
                out += ")";
            } else {
                out += format_number(n.value);
            }
            return;
        case Op::Var: out += var_name(n.var); return;
        case Op::Neg:
            out += "(-";
            print_node(*n.lhs, out);
            out += ")";
            return;
        case Op::Call:
            out += fn_name(n.fn);
            out += "(";
            print_node(*n.lhs, out);
            out += ")";
            return;
        default: break;
    }
    const char* sym = n.op == Op::Add ? "+" : n.op == Op::Sub ? "-" : n.op == Op::Mul ? "*" : n.op == Op::Div ? "/" : "^";
    out += "(";
    print_node(*n.lhs, out);
    out += sym;
    print_node(*n.rhs, out);
    out += ")";
}

bool uses_var(const Expression::Node& n, Var v) {
    if (n.op == Op::Var) return n.var == v;
    return (n.lhs && uses_var(*n.lhs, v)) || (n.rhs && uses_var(*n.rhs, v));
}

}  // namespace

Expression Expression::parse(std::string_view text) {
    Expression e;
    e.root_ = Parser(text).parse();
    e.source_ = std::string(text);
    return e;
}

double Expression::eval(const ExprVariables& vars) const { return eval_node(*root_, vars); }

std::string Expression::to_string() const {
    std::string out;
    print_node(*root_, out);
    return out;
}

bool Expression::depends_on_s() const { return uses_var(*root_, Var::S); }
bool Expression::depends_on_absx() const { return uses_var(*root_, Var::Absx); }
bool Expression::depends_on_psi() const { return uses_var(*root_, Var::Psi); }

}  // namespace curveflow
