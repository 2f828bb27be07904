#pragma once

// Minimal complex expression language for operator symbols h(s) and
// coefficient rules c_n.  Supported forms: complex/real/integer literals,
// one free variable, + - * /, unary minus, integer powers, exp(.), conj(.).
// `i` is the imaginary unit.  There is no implicit multiplication.

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monop/errors.hpp"

namespace monop::expr {

using Complex = std::complex<double>;

enum class NodeKind { Literal, Variable, Add, Sub, Mul, Div, Neg, Pow, Exp, Conj };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind;
    Complex value{};    // Literal
    bool is_real = false;  // Literal without imaginary part (came from a number token)
    NodePtr a, b;       // operands; unary nodes use `a` only
    long exponent = 0;  // Pow
};

// Rational normal form P/Q; coefficient lists ascending in the variable.
struct RationalForm {
    std::vector<Complex> num;
    std::vector<Complex> den;
};

class ComplexExpr {
public:
    ComplexExpr() = default;

    // Parses `text` with the single free variable `var_name`.
    // Throws ParseError on syntax errors, unknown identifiers, or use of a
    // variable other than the declared one.
    static ComplexExpr parse(std::string_view text, std::string_view var_name);

    // IEEE-double evaluation. Throws PoleError when a denominator modulus
    // falls below 1e-300; overflow propagates as infinity.
    Complex eval(Complex z) const;

    // Precedence-aware printout; parse(str()) reproduces the tree.
    std::string str() const;

    // Normalizes to P/Q when the tree is free of exp/conj; cancellation uses
    // a polynomial gcd verified by exact division.
    std::optional<RationalForm> as_rational() const;

    bool valid() const { return root_ != nullptr; }
    const NodePtr& root() const { return root_; }
    const std::string& var_name() const { return var_; }

    friend bool structurally_equal(const ComplexExpr& x, const ComplexExpr& y);

private:
    NodePtr root_;
    std::string var_;
};

bool structurally_equal(const ComplexExpr& x, const ComplexExpr& y);

}  // namespace monop::expr
