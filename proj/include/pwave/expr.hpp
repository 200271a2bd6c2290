// Closed-form coefficient expressions over {x, +, -, *, /, ^, sin, cos, exp, pi}
// with exact symbolic derivatives.
#pragma once

#include <memory>
#include <string>

namespace pwave {

class ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

// Immutable scalar expression of one variable. Copy is cheap (shared AST).
class Expr {
public:
    Expr();                       // the constant 0
    explicit Expr(double value);  // a constant

    // Parses the small coefficient grammar:
    //   expr   := term (('+'|'-') term)*
    //   term   := factor (('*'|'/') factor)*
    //   factor := ['+'|'-'] power
    //   power  := atom ['^' factor]
    //   atom   := number | 'x' | 'pi' | func '(' expr ')' | '(' expr ')'
    //   func   := sin | cos | exp | sqrt | log
    // Throws std::invalid_argument with position info on malformed input.
    static Expr parse(const std::string& text);

    double operator()(double x) const;
    Expr derivative() const;

    bool is_constant(double* value = nullptr) const;
    std::string to_string() const;

private:
    explicit Expr(ExprPtr node) : node_(std::move(node)) {}
    ExprPtr node_;
    friend Expr operator+(const Expr&, const Expr&);
    friend Expr operator-(const Expr&, const Expr&);
    friend Expr operator*(const Expr&, const Expr&);
    friend Expr operator/(const Expr&, const Expr&);
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

} // namespace pwave
