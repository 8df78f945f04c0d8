#ifndef CURVEFLOW_EXPR_HPP
#define CURVEFLOW_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>

namespace curveflow {

// Point at which a data expression is evaluated.
struct ExprVariables {
    double theta = 0.0;  // normal angle (radians)
    double s = 1.0;      // support function
    double absx = 1.0;   // |x|
    double psi = 0.0;    // position angle of x
};

// Small arithmetic language for prescribed data:
//   numbers, theta (or the UTF-8 letter), s, absx, psi, pi,
//   + - * / ^, sin cos tan cosh sinh exp log sqrt, parentheses.
class Expression {
public:
    static Expression parse(std::string_view text);

    double eval(const ExprVariables& vars) const;
    double operator()(const ExprVariables& vars) const { return eval(vars); }
    // Fully parenthesized form that parses back to the same values.
    std::string to_string() const;
    const std::string& source() const { return source_; }
    bool depends_on_s() const;
    bool depends_on_absx() const;
    bool depends_on_psi() const;

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
};

}  // namespace curveflow

#endif
