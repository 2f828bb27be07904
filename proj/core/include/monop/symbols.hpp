#pragma once

// Monomial-operator specifications T(x^n) = c_n x^{p_n} with affine exponent
// p_n = a*n + b, their half-plane symbols (h, phi), and the closed-form
// classifications that short-circuit the numeric Carleson tests.
//
// Convention: phi(s) = a*s + beta with beta = b + (1-a)/2, which is the
// affine map matching phi(n+1/2) = p_n + 1/2 at every node.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "monop/expr.hpp"
#include "monop/verdict.hpp"

namespace monop::symbols {

using Complex = std::complex<double>;

// Coefficient rule: a closed-form expression in the integer variable n, or an
// explicit head list with a declared tail expression for n >= head.size().
// Tail behavior is never extrapolated: reading past an undeclared tail throws.
struct CoeffRule {
    std::optional<expr::ComplexExpr> closed_form;
    std::vector<Complex> head;
    std::optional<expr::ComplexExpr> tail;

    static CoeffRule from_expr(expr::ComplexExpr e);
    static CoeffRule from_list(std::vector<Complex> values,
                               std::optional<expr::ComplexExpr> tail = std::nullopt);

    Complex eval(int n) const;
    bool has_closed_form() const { return closed_form.has_value(); }
    // Expression governing index n (closed form, or tail for n >= head size).
    const expr::ComplexExpr* rule_for(int n) const;
};

struct MonomialSpec {
    std::string name;
    CoeffRule coeff;
    double exp_slope = 1.0;      // a >= 0
    double exp_intercept = 0.0;  // b;  p_n = a*n + b
    std::optional<expr::ComplexExpr> weight_hint;  // registered closed form for h(s)

    double exponent(int n) const { return exp_slope * n + exp_intercept; }
    Complex coefficient(int n) const { return coeff.eval(n); }
    bool flat() const { return exp_slope == 1.0; }

    // Checks a >= 0, p_0 > -1/2, and that c_n is finite for n < n_probe.
    // Throws SpecError on violation.
    void validate(int n_probe = 64) const;
};

// Half-plane symbol pair: phi(s) = slope*s + intercept and weight h.
// weight == nullopt means "interpolation-only": h is known only at the nodes
// n + 1/2 through h(n+1/2) = conj(c_n).
struct SymbolPair {
    double slope = 1.0;
    double intercept = 0.0;
    std::optional<expr::ComplexExpr> weight;

    Complex phi(Complex s) const { return slope * s + intercept; }
};

// h = P/Q in lowest terms, coefficient lists ascending.
struct RationalSymbol {
    std::vector<Complex> num;
    std::vector<Complex> den;

    static std::optional<RationalSymbol> from_expr(const expr::ComplexExpr& e);
    Complex eval(Complex s) const;
    bool zero() const;
    // Denominator roots with |Re| below a relative tolerance, reported as the
    // axis ordinates y where h(iy) blows up.
    std::vector<double> axis_pole_ordinates(double rel_tol = 1e-9) const;
};

enum class AxisClass {
    AxisPole,                // |h|^2 not locally integrable on the imaginary axis
    BoundedOnAxis,           // |h(iy)| -> modulus_limit as |y| -> inf
    SquareIntegrableOnAxis,  // h in L^2(iR)
    GrowsOnAxis,             // deg P > deg Q
};

struct AxisClassification {
    AxisClass kind;
    double modulus_limit = 0.0;        // BoundedOnAxis only
    std::optional<double> pole_y;      // AxisPole only
};

AxisClassification rational_symbol_classify(const RationalSymbol& h);

// Derives (slope, beta) from the spec and attaches the registered closed-form
// weight after checking it interpolates conj(c_n) at the first nodes.
SymbolPair affine_symbols(const MonomialSpec& spec);

// True iff phi is compatible with a bounded composition symbol:
// (a > 0 and beta >= 0) or (a == 0 and beta > 0).
bool self_map_check(const SymbolPair& sym);

// max_{0 <= n < N} |h(n+1/2) - conj(c_n)|; nullopt when the weight is
// interpolation-only (not applicable rather than an error).
std::optional<double> interpolation_consistency(const SymbolPair& sym,
                                                const MonomialSpec& spec, int N);

// ---- Blaschke / Muntz structural checks ------------------------------------

enum class BlaschkeResult { Blaschke, NotBlaschke, Inconclusive };

// Node-sequence rule in the closed right half-plane.
struct NodeRule {
    enum class Kind { Affine, Geometric, Explicit } kind = Kind::Explicit;
    Complex slope{};       // Affine: z_n = slope*n + offset
    Complex offset{};      // Affine offset / Geometric first term
    Complex ratio{};       // Geometric: z_n = offset * ratio^n
    std::vector<Complex> values;        // Explicit
    std::optional<double> tail_bound;   // Explicit: finite bound on the remaining sum

    static NodeRule affine(Complex slope, Complex offset);
    static NodeRule geometric(Complex first, Complex ratio);
    static NodeRule explicit_nodes(std::vector<Complex> values,
                                   std::optional<double> tail_bound = std::nullopt);
    Complex node(int n) const;
};

// Convergence of sum Re z_n / (1 + |z_n|^2), decided analytically per rule
// class; explicit lists need a declared tail bound, else Inconclusive.
// Probed nodes must satisfy Re z_n >= 0 (throws SpecError otherwise).
BlaschkeResult blaschke_test(const NodeRule& rule, int n_probe = 64);

// Partial sum of the Blaschke series over the first N nodes (test oracle).
double blaschke_partial_sum(const NodeRule& rule, int N);

enum class MuntzResult { Dense, NotDense, Inconclusive };

// Index set S within the naturals, given by rule class.
struct IndexSetRule {
    enum class Kind { All, Arithmetic, Geometric, Explicit } kind = Kind::All;
    long start = 0, step = 1;       // Arithmetic: start, start+step, ...
    long first = 1;                 // Geometric: first, first*ratio, ...
    long ratio = 2;
    std::vector<long> values;       // Explicit
    bool tail_declared_empty = false;  // Explicit: the set is exactly `values`

    static IndexSetRule all();
    static IndexSetRule arithmetic(long start, long step);
    static IndexSetRule geometric(long first, long ratio);
    static IndexSetRule explicit_set(std::vector<long> values, bool tail_declared_empty);
};

// Dense iff sum_{n in S} 1/(n+1) diverges, decided per rule class.
MuntzResult muntz_density(const IndexSetRule& rule, int n_probe = 64);

double muntz_partial_sum(const IndexSetRule& rule, int N);  // test oracle

// Angular derivative of the affine phi at infinity: 1/a for a > 0, +inf for
// a = 0. The unweighted composition operator is bounded iff the value is a
// finite positive number.
double angular_derivative(const SymbolPair& sym);

// ---- Fast-path classification ----------------------------------------------

enum class FastTag {
    Deferred,               // pass to the measure pipeline
    InvalidExponent,        // p_0 <= -1/2
    NotSelfMap,
    AxisPole,
    ZeroOperator,
    RankOneCompact,         // a == 0, h in H^2 => rank one
    RankOneUnbounded,       // a == 0, h not in H^2
    RankOneInconclusive,    // a == 0 without a usable closed form
    SquareIntegrableCompact,
    BoundaryLine,           // beta == 0: deferred, compactness impossible
};

const char* to_string(FastTag tag);

struct FastPath {
    std::optional<Verdict> verdict;  // nullopt => defer to the measure module
    FastTag tag = FastTag::Deferred;
    bool compact_impossible = false;
    std::optional<AxisClassification> axis;
    std::string note;
};

// Closed-form/structural decision layer. Emits Compact only for beta > 0;
// on the boundary line beta == 0 a nonzero symbol can never satisfy the
// vanishing condition, so compactness is ruled out and boundedness is left
// to the numeric tests.
FastPath classify_fast_path(const MonomialSpec& spec, const SymbolPair& sym);

}  // namespace monop::symbols
