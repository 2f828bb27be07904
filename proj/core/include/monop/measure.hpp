#pragma once

// Pullback measure of an affine symbol pair and the Carleson-square tests.
//
// For phi(s) = a*s + beta (a > 0, beta >= 0) the measure is concentrated on
// the vertical line Re s = beta:
//     mu(E) = integral over { y : beta + i*a*y in E } of |h(iy)|^2 dy.
// A Carleson square based on an interval I of the imaginary axis with
// midpoint t and |I| = 2L is Q = [0, 2L] x [t-L, t+L]; its center is L + it.
// Psi(t, L) = mu(Q)/(2L) is the quantity whose suprema drive every verdict.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "monop/expr.hpp"
#include "monop/quadrature.hpp"
#include "monop/symbols.hpp"
#include "monop/verdict.hpp"

namespace monop::measure {

using Complex = std::complex<double>;

struct LineMeasure {
    double slope = 1.0;      // a > 0
    double abscissa = 0.0;   // beta >= 0, the supporting line Re s = beta
    expr::ComplexExpr weight;
    std::optional<symbols::RationalSymbol> rational;  // closed-form path when present

    // Throws SpecError when the pair has no closed-form weight or a <= 0.
    static LineMeasure from_symbols(const symbols::SymbolPair& sym);

    double density(double y) const;  // |h(iy)|^2
};

struct CarlesonSquare {
    double center_t = 0.0;
    double half_length = 0.0;            // L > 0; |I| = 2L
    double side() const { return 2.0 * half_length; }
    Complex center() const { return {half_length, center_t}; }
};

// Search box and grids. All grid coordinates are powers of two (plus the
// exact boundary value beta/2) so runs are reproducible.
struct SearchBox {
    double t_max = 4096.0;    // 2^12
    double L_min = 1.0 / 4096.0 / 16.0;  // 2^-12... kept explicit below
    double L_max = 64.0;      // 2^6
    double t_lin_span = 8.0;  // linear t grid on [-span, span]
    double t_lin_step = 0.25;
    quadrature::Options quad{1e-10, 1e-15, 28};

    SearchBox() { L_min = std::exp2(-12); }

    std::vector<double> t_grid() const;
    // Full L grid from L_min to L_max; includes beta/2 when admissible.
    std::vector<double> L_grid(double beta) const;
};

struct WindowMass {
    double value = 0.0;
    std::optional<double> pole_y;  // set when +inf came from an axis pole
    bool infinite() const { return !std::isfinite(value); }
};

// mu(Q_{t,L}) = integral of |h(iy)|^2 over y in [(t-L)/a, (t+L)/a], or 0 when
// the square misses the supporting line (2L < beta). Rational weights with
// denominator degree <= 2 use the closed-form antiderivative; otherwise
// adaptive quadrature at relative tolerance 1e-10. A pole within 1e-6 of the
// integration range yields the +inf sentinel with the pole location.
WindowMass window_mass(const LineMeasure& m, double t, double L,
                       const quadrature::Options& opt = {1e-10, 1e-15, 28});

// Total mass mu of the whole line; +inf when h is not square integrable.
WindowMass total_mass(const LineMeasure& m);

// Sampled window profile, one row per (t, L) grid point.
struct WindowSample {
    double t, L, mass, ratio;
};
struct WindowProfile {
    std::vector<WindowSample> rows;
    std::string to_csv() const;  // header: t,L,mass,ratio
};
WindowProfile window_profile(const LineMeasure& m, const SearchBox& box);

enum class TailTrend { Decaying, Flat, Growing };
const char* to_string(TailTrend t);

// sup_t of the unit-window integral int_t^{t+1} |h(iy)|^2 dy (the rescaled
// boundedness criterion). Grid scan plus golden-section refinement around the
// best cell; the tail summary samples |t| in [t_max/2, t_max].
struct BandResult {
    double sup = 0.0;
    double argmax_t = 0.0;
    TailTrend tail = TailTrend::Flat;
    std::vector<std::pair<double, double>> tail_samples;  // (t, window value)
    std::optional<double> pole_y;
    bool infinite() const { return !std::isfinite(sup); }
};
BandResult band_sup(const LineMeasure& m, double t_max, const SearchBox& box);

// sup Psi over the search box, refined around the argmax, plus the analytic
// escape-route limits for rational weights: Psi -> l^2/a as |t| -> inf (l the
// modulus limit of h on the axis) and Psi -> total_mass/(2L) as L -> inf.
struct CarlesonEstimate {
    double sup_psi = 0.0;
    CarlesonSquare argmax;
    std::optional<double> limit_t_inf;
    std::optional<double> limit_L_inf;
    std::optional<double> pole_y;
    bool infinite() const { return !std::isfinite(sup_psi); }
};
CarlesonEstimate carleson_sup_estimate(const LineMeasure& m, const SearchBox& box);

// Naive vanishing-Carleson check: true iff sup_t Psi(t, L) falls below tol at
// the smallest grid L. Exists to demonstrate its own insufficiency; use
// true_vanishing_test for verdicts.
bool naive_vanishing_test(const LineMeasure& m, const SearchBox& box, double tol = 1e-3);

// True vanishing condition: for r = 2^-1 .. 2^-r_min_exp, the sup of Psi over
// windows whose center C = L + it lies in S_r = {0 < Re z < r or |z| > 1/r}.
// Vanishing iff the sup trace decreases below tol with a monotone trend.
struct VanishingTrace {
    std::vector<std::pair<double, double>> r_sup;  // (r, sup over S_r windows)
    bool vanishing = false;
    bool monotone = true;
    std::vector<WindowSample> witness;  // worst window family when not vanishing
    std::optional<double> pole_y;
};
VanishingTrace true_vanishing_test(const LineMeasure& m, const SearchBox& box,
                                   int r_min_exp = 10, double tol = 1e-3);

// ---- Verdict assembly --------------------------------------------------------

struct DecideConfig {
    SearchBox box;
    double bound_sup_threshold = 1e6;
    double tol_vanish = 1e-3;
    int r_min_exp = 10;
};

struct Decision {
    Verdict verdict = Verdict::Inconclusive;
    symbols::FastTag fast_tag = symbols::FastTag::Deferred;
    std::optional<CarlesonEstimate> carleson;
    std::optional<BandResult> band;
    std::optional<bool> naive_vanishing;
    std::optional<VanishingTrace> vanishing;
    std::vector<std::string> notes;
};

// Fast path first; when deferred, boundedness from the Carleson supremum and
// band tail trend, compactness from the true vanishing test. Conflicting
// numeric evidence yields Inconclusive rather than a guess.
Decision decide(const symbols::MonomialSpec& spec, const symbols::SymbolPair& sym,
                const DecideConfig& cfg = {});

// ---- Generic dyadic fallback ---------------------------------------------------

// Discretizes mu for an arbitrary expression phi by sampling phi(iy) with
// weights |h(iy)|^2 dy on a uniform grid and accumulating into dyadic boxes
// [0, 2^k] x [j 2^k, (j+1) 2^k]. Returns the max mass/side ratio; an estimate
// only, no convergence guarantee. Throws NotSelfMapError when a sample lands
// at Re < 0.
struct DyadicOptions {
    double y_span = 64.0;
    int samples = 1 << 16;
    int depth = 8;  // boxes down to side 2^-depth
};
struct DyadicEstimate {
    double sup_ratio = 0.0;
    int argmax_level = 0;
    long argmax_index = 0;
};
DyadicEstimate dyadic_box_estimate(const expr::ComplexExpr& phi, const expr::ComplexExpr& h,
                                   const DyadicOptions& opt = {});

}  // namespace monop::measure
