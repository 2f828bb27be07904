#pragma once

// Exact and high-precision scalars for the Galerkin oracle. The rational path
// performs no rounding; the float path carries 256 binary digits, enough to
// absorb the ~4^k alternating growth of shifted-Legendre coefficients up to
// the supported truncation sizes.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <optional>

#include "monop/expr.hpp"

namespace monop::exact {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline constexpr int kPrecisionBits = 256;

using HPFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<kPrecisionBits, boost::multiprecision::backends::digit_base_2>>;

// Every IEEE double is a dyadic rational; the conversion is exact.
BigRational rational_from_double(double x);

double to_double(const BigRational& q);
double to_double(const HPFloat& x);

// Minimal complex type over HPFloat (only what expression evaluation needs).
struct HPComplex {
    HPFloat re{0}, im{0};

    HPComplex() = default;
    HPComplex(HPFloat r, HPFloat i) : re(std::move(r)), im(std::move(i)) {}
    explicit HPComplex(double r) : re(r), im(0) {}

    HPComplex operator-() const { return {-re, -im}; }
    friend HPComplex operator+(const HPComplex& a, const HPComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend HPComplex operator-(const HPComplex& a, const HPComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend HPComplex operator*(const HPComplex& a, const HPComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend HPComplex operator/(const HPComplex& a, const HPComplex& b);
};

HPFloat abs(const HPComplex& z);
HPComplex exp(const HPComplex& z);
HPComplex conj(const HPComplex& z);
std::complex<double> to_std(const HPComplex& z);

// Evaluates an expression tree at integer n over the rationals. Returns
// nullopt when the tree needs i, exp, or a conj of a non-real subtree —
// callers fall back to the high-precision float path.
std::optional<BigRational> eval_rational(const expr::ComplexExpr& e, const BigRational& n);

// High-precision complex evaluation of the same tree (throws PoleError on a
// vanishing denominator, mirroring the double evaluator).
HPComplex eval_hp(const expr::ComplexExpr& e, const HPComplex& z);

}  // namespace monop::exact
