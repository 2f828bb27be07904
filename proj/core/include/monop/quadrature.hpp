#pragma once

// Adaptive Gauss-Kronrod 7/15 quadrature with deterministic panel order.
// Panels are bisected until |K15 - G7| meets max(abs_floor, rel_tol*|K15|);
// accepted panels are summed in depth-first order so results are
// bit-identical run to run.

#include <complex>
#include <functional>

namespace monop::quadrature {

using Complex = std::complex<double>;

struct Options {
    double rel_tol = 1e-10;
    double abs_floor = 1e-15;
    int max_depth = 28;
};

struct Result {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
    double tail_estimate = 0.0;  // line integrals only
    bool warning = false;        // depth exhausted or tail above tolerance
};

Result integrate(const std::function<Complex(double)>& f, double a, double b,
                 const Options& opt = {});
Result integrate_real(const std::function<double(double)>& f, double a, double b,
                      const Options& opt = {});

// Integral over [-y_max, y_max] with initial breakpoints at +-2^j, plus a
// first-order tail correction y*f(+-y_max) that is exact for f ~ A/y^2.
// The correction magnitude is reported as tail_estimate; a warning is set
// when it exceeds tail_warn_tol.
struct LineOptions {
    double y_max = 16384.0;  // 2^14
    Options panel{1e-8, 1e-15, 24};
    bool tail_correction = true;
    double tail_warn_tol = 1e-6;
};

Result integrate_line(const std::function<Complex(double)>& f, const LineOptions& opt = {});

}  // namespace monop::quadrature
