#include "kobalab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace kobalab {

struct Expr::Node {
    enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Exp, Log, Sqrt, Abs, Min, Max };
    Op op = Op::Const;
    double value = 0.0;  // Const
    int var = 0;         // Var: index into the flattened (x1,y1,x2,y2,...) layout
    std::shared_ptr<const Node> a, b;

    double eval(const CVec& z) const {
        switch (op) {
            case Op::Const: return value;
            case Op::Var: {
                const cplx& c = z[static_cast<std::size_t>(var / 2)];
                return (var % 2 == 0) ? c.real() : c.imag();
            }
            case Op::Add: return a->eval(z) + b->eval(z);
            case Op::Sub: return a->eval(z) - b->eval(z);
            case Op::Mul: return a->eval(z) * b->eval(z);
            case Op::Div: return a->eval(z) / b->eval(z);
            case Op::Pow: return std::pow(a->eval(z), b->eval(z));
            case Op::Neg: return -a->eval(z);
            case Op::Exp: return std::exp(a->eval(z));
            case Op::Log: return std::log(a->eval(z));
            case Op::Sqrt: return std::sqrt(a->eval(z));
            case Op::Abs: return std::fabs(a->eval(z));
            case Op::Min: return std::min(a->eval(z), b->eval(z));
            case Op::Max: return std::max(a->eval(z), b->eval(z));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    int dim;

    explicit Parser(const std::string& text, int d) : s(text), dim(d) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ExprError("expression error at position " + std::to_string(pos) + ": " + msg);
    }

    NodePtr make(Expr::Node&& n) { return std::make_shared<const Expr::Node>(std::move(n)); }

    NodePtr binary(Expr::Node::Op op, NodePtr a, NodePtr b) {
        Expr::Node n;
        n.op = op;
        n.a = std::move(a);
        n.b = std::move(b);
        return make(std::move(n));
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (eat('+'))
                lhs = binary(Expr::Node::Op::Add, lhs, parse_term());
            else if (eat('-'))
                lhs = binary(Expr::Node::Op::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (eat('*'))
                lhs = binary(Expr::Node::Op::Mul, lhs, parse_factor());
            else if (eat('/'))
                lhs = binary(Expr::Node::Op::Div, lhs, parse_factor());
            else
                return lhs;
        }
    }

    // '^' binds tighter than unary minus: -x^2 == -(x^2)
    NodePtr parse_factor() {
        if (eat('-')) {
            Expr::Node n;
            n.op = Expr::Node::Op::Neg;
            n.a = parse_factor();
            return make(std::move(n));
        }
        (void)eat('+');
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (eat('^')) {
            NodePtr e = parse_factor();  // right-associative, allows x^-2
            return binary(Expr::Node::Op::Pow, base, e);
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            NodePtr e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        const char* begin = s.c_str() + pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("bad number");
        pos += static_cast<std::size_t>(end - begin);
        Expr::Node n;
        n.op = Expr::Node::Op::Const;
        n.value = v;
        return make(std::move(n));
    }

    NodePtr parse_ident() {
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        std::string name = s.substr(start, pos - start);

        if ((name[0] == 'x' || name[0] == 'y') && name.size() > 1) {
            bool numeric = true;
            for (std::size_t i = 1; i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i]))) numeric = false;
            if (numeric) {
                int idx = std::stoi(name.substr(1));
                if (idx < 1 || idx > dim)
                    fail("variable " + name + " out of range for dimension " +
                         std::to_string(dim));
                Expr::Node n;
                n.op = Expr::Node::Op::Var;
                n.var = 2 * (idx - 1) + (name[0] == 'y' ? 1 : 0);
                return make(std::move(n));
            }
        }

        auto fn = [&](Expr::Node::Op op, int arity) -> NodePtr {
            if (!eat('(')) fail("expected '(' after " + name);
            Expr::Node n;
            n.op = op;
            n.a = parse_expr();
            if (arity == 2) {
                if (!eat(',')) fail("expected ',' in " + name);
                n.b = parse_expr();
            }
            if (!eat(')')) fail("expected ')' after " + name + " arguments");
            return make(std::move(n));
        };

        if (name == "exp") return fn(Expr::Node::Op::Exp, 1);
        if (name == "log") return fn(Expr::Node::Op::Log, 1);
        if (name == "sqrt") return fn(Expr::Node::Op::Sqrt, 1);
        if (name == "abs") return fn(Expr::Node::Op::Abs, 1);
        if (name == "min") return fn(Expr::Node::Op::Min, 2);
        if (name == "max") return fn(Expr::Node::Op::Max, 2);
        fail("unknown identifier '" + name + "'");
    }
};

}  // namespace

Expr Expr::parse(const std::string& text, int dim) {
    if (dim < 1) throw ExprError("dimension must be >= 1");
    Parser p(text, dim);
    Expr e;
    e.root_ = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    e.dim_ = dim;
    e.text_ = text;
    return e;
}

double Expr::eval(const CVec& z) const { return root_->eval(z); }

}  // namespace kobalab
