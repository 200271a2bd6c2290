#include "pwave/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pwave {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Sqrt, Log, Neg };

class ExprNode {
public:
    Op op = Op::Const;
    double value = 0.0;
    ExprPtr a, b;

    double eval(double x) const {
        switch (op) {
            case Op::Const: return value;
            case Op::Var:   return x;
            case Op::Add:   return a->eval(x) + b->eval(x);
            case Op::Sub:   return a->eval(x) - b->eval(x);
            case Op::Mul:   return a->eval(x) * b->eval(x);
            case Op::Div:   return a->eval(x) / b->eval(x);
            case Op::Pow:   return std::pow(a->eval(x), b->eval(x));
            case Op::Sin:   return std::sin(a->eval(x));
            case Op::Cos:   return std::cos(a->eval(x));
            case Op::Exp:   return std::exp(a->eval(x));
            case Op::Sqrt:  return std::sqrt(a->eval(x));
            case Op::Log:   return std::log(a->eval(x));
            case Op::Neg:   return -a->eval(x);
        }
        return 0.0;
    }
};

namespace {

ExprPtr mk(Op op, ExprPtr a = nullptr, ExprPtr b = nullptr, double v = 0.0) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    n->value = v;
    return n;
}

ExprPtr constant(double v) { return mk(Op::Const, nullptr, nullptr, v); }

bool is_const(const ExprPtr& n, double v) { return n->op == Op::Const && n->value == v; }

// Constant-folding constructors keep derivative trees small.
ExprPtr add(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0)) return b;
    if (is_const(b, 0)) return a;
    if (a->op == Op::Const && b->op == Op::Const) return constant(a->value + b->value);
    return mk(Op::Add, std::move(a), std::move(b));
}
ExprPtr sub(ExprPtr a, ExprPtr b) {
    if (is_const(b, 0)) return a;
    if (a->op == Op::Const && b->op == Op::Const) return constant(a->value - b->value);
    if (is_const(a, 0)) return mk(Op::Neg, std::move(b));
    return mk(Op::Sub, std::move(a), std::move(b));
}
ExprPtr mul(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0) || is_const(b, 0)) return constant(0);
    if (is_const(a, 1)) return b;
    if (is_const(b, 1)) return a;
    if (a->op == Op::Const && b->op == Op::Const) return constant(a->value * b->value);
    return mk(Op::Mul, std::move(a), std::move(b));
}
ExprPtr div(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0)) return constant(0);
    if (is_const(b, 1)) return a;
    if (a->op == Op::Const && b->op == Op::Const && b->value != 0)
        return constant(a->value / b->value);
    return mk(Op::Div, std::move(a), std::move(b));
}

ExprPtr diff(const ExprPtr& n);

ExprPtr diff(const ExprPtr& n) {
    switch (n->op) {
        case Op::Const: return constant(0);
        case Op::Var:   return constant(1);
        case Op::Add:   return add(diff(n->a), diff(n->b));
        case Op::Sub:   return sub(diff(n->a), diff(n->b));
        case Op::Mul:   return add(mul(diff(n->a), n->b), mul(n->a, diff(n->b)));
        case Op::Div:
            return div(sub(mul(diff(n->a), n->b), mul(n->a, diff(n->b))),
                       mul(n->b, n->b));
        case Op::Pow: {
            if (n->b->op == Op::Const) {
                double p = n->b->value;
                // d/dx a^p = p a^(p-1) a'
                return mul(mul(constant(p), mk(Op::Pow, n->a, constant(p - 1))), diff(n->a));
            }
            // general a^b = exp(b log a)
            ExprPtr loga = mk(Op::Log, n->a);
            ExprPtr inner = add(mul(diff(n->b), loga), mul(n->b, div(diff(n->a), n->a)));
            return mul(mk(Op::Pow, n->a, n->b), inner);
        }
        case Op::Sin:  return mul(mk(Op::Cos, n->a), diff(n->a));
        case Op::Cos:  return mul(mk(Op::Neg, mk(Op::Sin, n->a)), diff(n->a));
        case Op::Exp:  return mul(mk(Op::Exp, n->a), diff(n->a));
        case Op::Sqrt: return div(diff(n->a), mul(constant(2), mk(Op::Sqrt, n->a)));
        case Op::Log:  return div(diff(n->a), n->a);
        case Op::Neg:  return mk(Op::Neg, diff(n->a));
    }
    return constant(0);
}

std::string render(const ExprPtr& n) {
    std::ostringstream os;
    switch (n->op) {
        case Op::Const: os << n->value; break;
        case Op::Var:   os << "x"; break;
        case Op::Add:   os << "(" << render(n->a) << "+" << render(n->b) << ")"; break;
        case Op::Sub:   os << "(" << render(n->a) << "-" << render(n->b) << ")"; break;
        case Op::Mul:   os << "(" << render(n->a) << "*" << render(n->b) << ")"; break;
        case Op::Div:   os << "(" << render(n->a) << "/" << render(n->b) << ")"; break;
        case Op::Pow:   os << "(" << render(n->a) << "^" << render(n->b) << ")"; break;
        case Op::Sin:   os << "sin(" << render(n->a) << ")"; break;
        case Op::Cos:   os << "cos(" << render(n->a) << ")"; break;
        case Op::Exp:   os << "exp(" << render(n->a) << ")"; break;
        case Op::Sqrt:  os << "sqrt(" << render(n->a) << ")"; break;
        case Op::Log:   os << "log(" << render(n->a) << ")"; break;
        case Op::Neg:   os << "(-" << render(n->a) << ")"; break;
    }
    return os.str();
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << "expression parse error at offset " << pos_ << ": " << what << " in \"" << s_ << "\"";
        throw std::invalid_argument(os.str());
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (eat('+')) e = add(e, term());
            else if (eat('-')) e = sub(e, term());
            else return e;
        }
    }
    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (eat('*')) e = mul(e, factor());
            else if (eat('/')) e = div(e, factor());
            else return e;
        }
    }
    ExprPtr factor() {
        if (eat('-')) return mk(Op::Neg, factor());
        if (eat('+')) return factor();
        return power();
    }
    ExprPtr power() {
        ExprPtr base = atom();
        if (eat('^')) return mk(Op::Pow, base, factor());
        return base;
    }
    ExprPtr atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return ident();
        if (eat('(')) {
            ExprPtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        fail("unexpected character");
    }
    ExprPtr number() {
        size_t end = pos_;
        while (end < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' ||
                s_[end] == 'e' || s_[end] == 'E' ||
                ((s_[end] == '+' || s_[end] == '-') && end > pos_ &&
                 (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
            ++end;
        double v = 0;
        try {
            size_t used = 0;
            v = std::stod(s_.substr(pos_, end - pos_), &used);
            pos_ += used;
        } catch (const std::exception&) {
            fail("bad numeric literal");
        }
        return constant(v);
    }
    ExprPtr ident() {
        size_t end = pos_;
        while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
        std::string name = s_.substr(pos_, end - pos_);
        pos_ = end;
        if (name == "x") return mk(Op::Var);
        if (name == "pi") return constant(M_PI);
        Op op;
        if (name == "sin") op = Op::Sin;
        else if (name == "cos") op = Op::Cos;
        else if (name == "exp") op = Op::Exp;
        else if (name == "sqrt") op = Op::Sqrt;
        else if (name == "log") op = Op::Log;
        else fail("unknown identifier '" + name + "'");
        if (!eat('(')) fail("expected '(' after function name");
        ExprPtr arg = expr();
        if (!eat(')')) fail("expected ')'");
        return mk(op, arg);
    }
};

} // namespace

Expr::Expr() : node_(constant(0)) {}
Expr::Expr(double value) : node_(constant(value)) {}

Expr Expr::parse(const std::string& text) { return Expr(Parser(text).run()); }

double Expr::operator()(double x) const { return node_->eval(x); }

Expr Expr::derivative() const { return Expr(diff(node_)); }

bool Expr::is_constant(double* value) const {
    if (node_->op != Op::Const) return false;
    if (value) *value = node_->value;
    return true;
}

std::string Expr::to_string() const { return render(node_); }

Expr operator+(const Expr& a, const Expr& b) { return Expr(add(a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(sub(a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(mul(a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(div(a.node_, b.node_)); }

} // namespace pwave
