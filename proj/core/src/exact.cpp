#include "monop/exact.hpp"

#include <cmath>

namespace monop::exact {

BigRational rational_from_double(double x) {
    if (!std::isfinite(x)) throw SpecError("cannot convert a non-finite double to a rational");
    if (x == 0.0) return BigRational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
    // 53 doublings make the mantissa integral
    long long scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    BigRational q(scaled);
    if (exp > 0) q *= BigRational(BigInt(1) << exp);
    else if (exp < 0) q /= BigRational(BigInt(1) << (-exp));
    return q;
}

double to_double(const BigRational& q) { return q.convert_to<double>(); }
double to_double(const HPFloat& x) { return x.convert_to<double>(); }

HPComplex operator/(const HPComplex& a, const HPComplex& b) {
    HPFloat d = b.re * b.re + b.im * b.im;
    if (d == 0) throw PoleError(std::complex<double>(0.0, 0.0));
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

HPFloat abs(const HPComplex& z) { return sqrt(z.re * z.re + z.im * z.im); }

HPComplex exp(const HPComplex& z) {
    HPFloat m = boost::multiprecision::exp(z.re);
    return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

HPComplex conj(const HPComplex& z) { return {z.re, -z.im}; }

std::complex<double> to_std(const HPComplex& z) {
    return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

namespace {

using expr::Node;
using expr::NodeKind;

std::optional<BigRational> rational_node(const Node& n, const BigRational& x) {
    switch (n.kind) {
        case NodeKind::Literal:
            if (!n.is_real) return std::nullopt;  // imaginary unit
            return rational_from_double(n.value.real());
        case NodeKind::Variable: return x;
        case NodeKind::Add: {
            auto a = rational_node(*n.a, x), b = rational_node(*n.b, x);
            if (!a || !b) return std::nullopt;
            return *a + *b;
        }
        case NodeKind::Sub: {
            auto a = rational_node(*n.a, x), b = rational_node(*n.b, x);
            if (!a || !b) return std::nullopt;
            return *a - *b;
        }
        case NodeKind::Mul: {
            auto a = rational_node(*n.a, x), b = rational_node(*n.b, x);
            if (!a || !b) return std::nullopt;
            return *a * *b;
        }
        case NodeKind::Div: {
            auto a = rational_node(*n.a, x), b = rational_node(*n.b, x);
            if (!a || !b) return std::nullopt;
            if (*b == 0) throw PoleError(std::complex<double>(to_double(x), 0.0));
            return *a / *b;
        }
        case NodeKind::Neg: {
            auto a = rational_node(*n.a, x);
            if (!a) return std::nullopt;
            return -*a;
        }
        case NodeKind::Pow: {
            auto a = rational_node(*n.a, x);
            if (!a) return std::nullopt;
            long e = n.exponent;
            BigRational base = *a;
            if (e < 0) {
                if (base == 0) throw PoleError(std::complex<double>(to_double(x), 0.0));
                base = 1 / base;
                e = -e;
            }
            BigRational acc(1);
            while (e > 0) {
                if (e & 1) acc *= base;
                base *= base;
                e >>= 1;
            }
            return acc;
        }
        case NodeKind::Conj: return rational_node(*n.a, x);  // identity on reals
        case NodeKind::Exp: return std::nullopt;
    }
    return std::nullopt;
}

HPComplex hp_node(const Node& n, const HPComplex& z) {
    switch (n.kind) {
        case NodeKind::Literal: return {HPFloat(n.value.real()), HPFloat(n.value.imag())};
        case NodeKind::Variable: return z;
        case NodeKind::Add: return hp_node(*n.a, z) + hp_node(*n.b, z);
        case NodeKind::Sub: return hp_node(*n.a, z) - hp_node(*n.b, z);
        case NodeKind::Mul: return hp_node(*n.a, z) * hp_node(*n.b, z);
        case NodeKind::Div: return hp_node(*n.a, z) / hp_node(*n.b, z);
        case NodeKind::Neg: return -hp_node(*n.a, z);
        case NodeKind::Pow: {
            HPComplex base = hp_node(*n.a, z);
            long e = n.exponent;
            if (e < 0) {
                base = HPComplex(1.0) / base;
                e = -e;
            }
            HPComplex acc(1.0);
            while (e > 0) {
                if (e & 1) acc = acc * base;
                base = base * base;
                e >>= 1;
            }
            return acc;
        }
        case NodeKind::Exp: return exp(hp_node(*n.a, z));
        case NodeKind::Conj: return conj(hp_node(*n.a, z));
    }
    return HPComplex(0.0);
}

}  // namespace

std::optional<BigRational> eval_rational(const expr::ComplexExpr& e, const BigRational& n) {
    if (!e.valid()) throw SpecError("evaluating an empty expression");
    return rational_node(*e.root(), n);
}

HPComplex eval_hp(const expr::ComplexExpr& e, const HPComplex& z) {
    if (!e.valid()) throw SpecError("evaluating an empty expression");
    return hp_node(*e.root(), z);
}

}  // namespace monop::exact
