#include "monop/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "monop/poly.hpp"

namespace monop::expr {

namespace {

constexpr double kPoleFloor = 1e-300;

NodePtr make_literal(Complex v, bool is_real) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Literal;
    n->value = v;
    n->is_real = is_real;
    return n;
}

NodePtr make_unary(NodeKind k, NodePtr a) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    return n;
}

NodePtr make_binary(NodeKind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_pow(NodePtr base, long exponent) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Pow;
    n->a = std::move(base);
    n->exponent = exponent;
    return n;
}

class Parser {
public:
    Parser(std::string_view text, std::string_view var) : text_(text), var_(var) {}

    NodePtr run() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("empty expression", 0);
        NodePtr e = parse_sum();
        skip_ws();
        if (pos_ < text_.size())
            throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr parse_sum() {
        NodePtr e = parse_term();
        for (;;) {
            if (eat('+')) e = make_binary(NodeKind::Add, e, parse_term());
            else if (eat('-')) e = make_binary(NodeKind::Sub, e, parse_term());
            else return e;
        }
    }

    NodePtr parse_term() {
        NodePtr e = parse_unary();
        for (;;) {
            if (eat('*')) e = make_binary(NodeKind::Mul, e, parse_unary());
            else if (eat('/')) e = make_binary(NodeKind::Div, e, parse_unary());
            else return e;
        }
    }

    NodePtr parse_unary() {
        if (eat('-')) return make_unary(NodeKind::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        while (eat('^')) base = make_pow(base, parse_int_exponent());
        return base;
    }

    long parse_int_exponent() {
        skip_ws();
        std::size_t at = pos_;
        bool negative = eat('-');
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("exponent must be an integer literal", at);
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000) throw ParseError("exponent too large", at);
            ++pos_;
        }
        return negative ? -v : v;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (c == '(') {
            std::size_t at = pos_;
            ++pos_;
            NodePtr e = parse_sum();
            if (!eat(')')) throw ParseError("missing ')'", at);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        std::size_t at = pos_;
        std::size_t end = pos_;
        while (end < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.'))
            ++end;
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t exp = end + 1;
            if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-')) ++exp;
            if (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp]))) {
                ++exp;
                while (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp]))) ++exp;
                end = exp;
            }
        }
        std::string token(text_.substr(at, end - at));
        try {
            std::size_t used = 0;
            double v = std::stod(token, &used);
            if (used != token.size()) throw ParseError("malformed number '" + token + "'", at);
            pos_ = end;
            return make_literal(Complex(v, 0.0), true);
        } catch (const ParseError&) {
            throw;
        } catch (...) {
            throw ParseError("malformed number '" + token + "'", at);
        }
    }

    NodePtr parse_ident() {
        std::size_t at = pos_;
        std::size_t end = pos_;
        while (end < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
            ++end;
        std::string name(text_.substr(at, end - at));
        pos_ = end;
        if (name == "i") return make_literal(Complex(0.0, 1.0), false);
        if (name == "exp" || name == "conj") {
            if (!eat('(')) throw ParseError("'" + name + "' expects '('", at);
            NodePtr arg = parse_sum();
            if (!eat(')')) throw ParseError("missing ')' after '" + name + "'", at);
            return make_unary(name == "exp" ? NodeKind::Exp : NodeKind::Conj, arg);
        }
        if (name == var_) {
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::Variable;
            return n;
        }
        if (name.size() == 1 && (name == "s" || name == "n" || name == "z" || name == "x"))
            throw ParseError("variable '" + name + "' used where '" + std::string(var_) +
                                 "' was declared",
                             at);
        throw ParseError("unknown identifier '" + name + "'", at);
    }

    std::string_view text_;
    std::string_view var_;
    std::size_t pos_ = 0;
};

Complex eval_node(const Node& n, Complex z) {
    switch (n.kind) {
        case NodeKind::Literal: return n.value;
        case NodeKind::Variable: return z;
        case NodeKind::Add: return eval_node(*n.a, z) + eval_node(*n.b, z);
        case NodeKind::Sub: return eval_node(*n.a, z) - eval_node(*n.b, z);
        case NodeKind::Mul: return eval_node(*n.a, z) * eval_node(*n.b, z);
        case NodeKind::Div: {
            Complex num = eval_node(*n.a, z);
            Complex den = eval_node(*n.b, z);
            if (std::abs(den) < kPoleFloor) throw PoleError(z);
            return num / den;
        }
        case NodeKind::Neg: return -eval_node(*n.a, z);
        case NodeKind::Pow: {
            Complex base = eval_node(*n.a, z);
            long e = n.exponent;
            if (e < 0) {
                if (std::abs(base) < kPoleFloor) throw PoleError(z);
                base = 1.0 / base;
                e = -e;
            }
            Complex acc(1.0, 0.0);
            while (e > 0) {  // square-and-multiply keeps results deterministic
                if (e & 1) acc *= base;
                base *= base;
                e >>= 1;
            }
            return acc;
        }
        case NodeKind::Exp: return std::exp(eval_node(*n.a, z));
        case NodeKind::Conj: return std::conj(eval_node(*n.a, z));
    }
    return {};
}

int precedence(NodeKind k) {
    switch (k) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        case NodeKind::Neg: return 3;
        case NodeKind::Pow: return 4;
        default: return 5;
    }
}

void print_node(const Node& n, const std::string& var, std::ostream& os);

void print_child(const Node& child, const std::string& var, std::ostream& os, int parent_prec,
                 bool right_side) {
    int cp = precedence(child.kind);
    bool parens = cp < parent_prec || (cp == parent_prec && right_side);
    if (parens) os << '(';
    print_node(child, var, os);
    if (parens) os << ')';
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void print_node(const Node& n, const std::string& var, std::ostream& os) {
    switch (n.kind) {
        case NodeKind::Literal:
            if (n.is_real) {
                if (n.value.real() < 0) os << '(' << format_double(n.value.real()) << ')';
                else os << format_double(n.value.real());
            } else {
                os << 'i';
            }
            return;
        case NodeKind::Variable: os << var; return;
        case NodeKind::Add:
            print_child(*n.a, var, os, 1, false);
            os << '+';
            print_child(*n.b, var, os, 1, true);
            return;
        case NodeKind::Sub:
            print_child(*n.a, var, os, 1, false);
            os << '-';
            print_child(*n.b, var, os, 1, true);
            return;
        case NodeKind::Mul:
            print_child(*n.a, var, os, 2, false);
            os << '*';
            print_child(*n.b, var, os, 2, true);
            return;
        case NodeKind::Div:
            print_child(*n.a, var, os, 2, false);
            os << '/';
            print_child(*n.b, var, os, 2, true);
            return;
        case NodeKind::Neg:
            os << '-';
            print_child(*n.a, var, os, 3, true);
            return;
        case NodeKind::Pow:
            print_child(*n.a, var, os, 5, false);
            os << '^';
            if (n.exponent < 0) os << '-';
            os << std::abs(n.exponent);
            return;
        case NodeKind::Exp:
            os << "exp(";
            print_node(*n.a, var, os);
            os << ')';
            return;
        case NodeKind::Conj:
            os << "conj(";
            print_node(*n.a, var, os);
            os << ')';
            return;
    }
}

struct RatPair {
    poly::Poly num, den;
};

// Cancels the common factor verified by exact division; leaves inputs
// untouched when the verification remainder is not negligible.
RatPair reduce(RatPair r) {
    r.num = poly::trim(r.num, 1e-14 * poly::max_abs(r.num));
    r.den = poly::trim(r.den, 1e-14 * poly::max_abs(r.den));
    poly::Poly g = poly::gcd(r.num, r.den);
    if (poly::degree(g) < 1) return r;
    auto dn = poly::divmod(r.num, g);
    auto dd = poly::divmod(r.den, g);
    double scale = std::max(poly::max_abs(r.num), poly::max_abs(r.den));
    if (poly::max_abs(dn.rem) <= 1e-9 * scale && poly::max_abs(dd.rem) <= 1e-9 * scale) {
        r.num = poly::trim(dn.quot, 1e-14 * poly::max_abs(dn.quot));
        r.den = poly::trim(dd.quot, 1e-14 * poly::max_abs(dd.quot));
    }
    return r;
}

std::optional<RatPair> rational_node(const Node& n) {
    switch (n.kind) {
        case NodeKind::Literal: return RatPair{{n.value}, {Complex(1.0)}};
        case NodeKind::Variable: return RatPair{{Complex(0.0), Complex(1.0)}, {Complex(1.0)}};
        case NodeKind::Add:
        case NodeKind::Sub: {
            auto x = rational_node(*n.a);
            auto y = rational_node(*n.b);
            if (!x || !y) return std::nullopt;
            poly::Poly cross1 = poly::mul(x->num, y->den);
            poly::Poly cross2 = poly::mul(y->num, x->den);
            poly::Poly num = n.kind == NodeKind::Add ? poly::add(cross1, cross2)
                                                     : poly::sub(cross1, cross2);
            return reduce({std::move(num), poly::mul(x->den, y->den)});
        }
        case NodeKind::Mul: {
            auto x = rational_node(*n.a);
            auto y = rational_node(*n.b);
            if (!x || !y) return std::nullopt;
            return reduce({poly::mul(x->num, y->num), poly::mul(x->den, y->den)});
        }
        case NodeKind::Div: {
            auto x = rational_node(*n.a);
            auto y = rational_node(*n.b);
            if (!x || !y) return std::nullopt;
            if (poly::degree(y->num) < 0) return std::nullopt;  // division by zero expression
            return reduce({poly::mul(x->num, y->den), poly::mul(x->den, y->num)});
        }
        case NodeKind::Neg: {
            auto x = rational_node(*n.a);
            if (!x) return std::nullopt;
            return RatPair{poly::scale(x->num, Complex(-1.0)), x->den};
        }
        case NodeKind::Pow: {
            auto x = rational_node(*n.a);
            if (!x) return std::nullopt;
            long e = n.exponent;
            RatPair base = *x;
            if (e < 0) {
                if (poly::degree(base.num) < 0) return std::nullopt;
                std::swap(base.num, base.den);
                e = -e;
            }
            RatPair acc{{Complex(1.0)}, {Complex(1.0)}};
            while (e > 0) {
                if (e & 1) acc = reduce({poly::mul(acc.num, base.num), poly::mul(acc.den, base.den)});
                base = reduce({poly::mul(base.num, base.num), poly::mul(base.den, base.den)});
                e >>= 1;
            }
            return acc;
        }
        case NodeKind::Exp:
        case NodeKind::Conj: return std::nullopt;
    }
    return std::nullopt;
}

bool nodes_equal(const Node& x, const Node& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case NodeKind::Literal: return x.value == y.value && x.is_real == y.is_real;
        case NodeKind::Variable: return true;
        case NodeKind::Pow: return x.exponent == y.exponent && nodes_equal(*x.a, *y.a);
        case NodeKind::Neg:
        case NodeKind::Exp:
        case NodeKind::Conj: return nodes_equal(*x.a, *y.a);
        default: return nodes_equal(*x.a, *y.a) && nodes_equal(*x.b, *y.b);
    }
}

}  // namespace

ComplexExpr ComplexExpr::parse(std::string_view text, std::string_view var_name) {
    ComplexExpr e;
    e.var_ = std::string(var_name);
    e.root_ = Parser(text, var_name).run();
    return e;
}

Complex ComplexExpr::eval(Complex z) const {
    if (!root_) throw SpecError("evaluating an empty expression");
    return eval_node(*root_, z);
}

std::string ComplexExpr::str() const {
    if (!root_) return "";
    std::ostringstream os;
    print_node(*root_, var_, os);
    return os.str();
}

std::optional<RationalForm> ComplexExpr::as_rational() const {
    if (!root_) return std::nullopt;
    auto r = rational_node(*root_);
    if (!r) return std::nullopt;
    RatPair reduced = reduce(*r);
    if (poly::degree(reduced.den) < 0) return std::nullopt;
    return RationalForm{std::move(reduced.num), std::move(reduced.den)};
}

bool structurally_equal(const ComplexExpr& x, const ComplexExpr& y) {
    if (!x.root_ || !y.root_) return x.root_ == y.root_;
    return x.var_ == y.var_ && nodes_equal(*x.root_, *y.root_);
}

}  // namespace monop::expr
