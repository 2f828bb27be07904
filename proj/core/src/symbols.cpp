#include "monop/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "monop/poly.hpp"

namespace monop::symbols {

namespace {
constexpr double kAxisTol = 1e-9;
constexpr double kInterpTol = 1e-8;
}  // namespace

// ---- CoeffRule ----------------------------------------------------------------

CoeffRule CoeffRule::from_expr(expr::ComplexExpr e) {
    CoeffRule r;
    r.closed_form = std::move(e);
    return r;
}

CoeffRule CoeffRule::from_list(std::vector<Complex> values, std::optional<expr::ComplexExpr> tail) {
    CoeffRule r;
    r.head = std::move(values);
    r.tail = std::move(tail);
    return r;
}

Complex CoeffRule::eval(int n) const {
    if (closed_form) return closed_form->eval(Complex(static_cast<double>(n), 0.0));
    if (n < static_cast<int>(head.size())) return head[static_cast<std::size_t>(n)];
    if (tail) return tail->eval(Complex(static_cast<double>(n), 0.0));
    throw SpecError("coefficient rule has no declared tail beyond n = " +
                    std::to_string(head.size() - 1));
}

const expr::ComplexExpr* CoeffRule::rule_for(int n) const {
    if (closed_form) return &*closed_form;
    if (n >= static_cast<int>(head.size()) && tail) return &*tail;
    return nullptr;
}

// ---- MonomialSpec ---------------------------------------------------------------

void MonomialSpec::validate(int n_probe) const {
    if (!(exp_slope >= 0.0))
        throw SpecError("exponent slope must satisfy a >= 0 (got " + std::to_string(exp_slope) + ")");
    if (!(exponent(0) > -0.5))
        throw SpecError("exponent intercept violates Re p_0 > -1/2 (p_0 = " +
                        std::to_string(exponent(0)) + ")");
    for (int n = 0; n < n_probe; ++n) {
        Complex c = coefficient(n);
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw SpecError("coefficient rule is not finite at n = " + std::to_string(n));
    }
}

// ---- RationalSymbol -------------------------------------------------------------

std::optional<RationalSymbol> RationalSymbol::from_expr(const expr::ComplexExpr& e) {
    auto r = e.as_rational();
    if (!r) return std::nullopt;
    if (poly::degree(r->den) < 0) return std::nullopt;
    return RationalSymbol{std::move(r->num), std::move(r->den)};
}

Complex RationalSymbol::eval(Complex s) const {
    Complex d = poly::eval(den, s);
    if (std::abs(d) < 1e-300) throw PoleError(s);
    return poly::eval(num, s) / d;
}

bool RationalSymbol::zero() const { return poly::degree(num) < 0; }

std::vector<double> RationalSymbol::axis_pole_ordinates(double rel_tol) const {
    std::vector<double> out;
    for (Complex r : poly::roots(den)) {
        if (std::abs(r.real()) <= rel_tol * (1.0 + std::abs(r))) out.push_back(r.imag());
    }
    std::sort(out.begin(), out.end());
    return out;
}

AxisClassification rational_symbol_classify(const RationalSymbol& h) {
    if (h.zero()) return {AxisClass::SquareIntegrableOnAxis, 0.0, std::nullopt};
    auto poles = h.axis_pole_ordinates(kAxisTol);
    if (!poles.empty()) return {AxisClass::AxisPole, 0.0, poles.front()};
    int dp = poly::degree(h.num);
    int dq = poly::degree(h.den);
    if (dq >= dp + 1) return {AxisClass::SquareIntegrableOnAxis, 0.0, std::nullopt};
    if (dp == dq) {
        double limit = std::abs(h.num[static_cast<std::size_t>(dp)] /
                                h.den[static_cast<std::size_t>(dq)]);
        return {AxisClass::BoundedOnAxis, limit, std::nullopt};
    }
    return {AxisClass::GrowsOnAxis, std::numeric_limits<double>::infinity(), std::nullopt};
}

// ---- Symbol derivation ---------------------------------------------------------

SymbolPair affine_symbols(const MonomialSpec& spec) {
    SymbolPair sym;
    sym.slope = spec.exp_slope;
    // phi(n+1/2) = p_n + 1/2 forces the intercept b + (1-a)/2
    sym.intercept = spec.exp_intercept + (1.0 - spec.exp_slope) / 2.0;
    if (spec.weight_hint) {
        // registered closed form must interpolate conj(c_n) at the first nodes
        for (int n = 0; n < 12; ++n) {
            Complex c = spec.coefficient(n);
            Complex hv = spec.weight_hint->eval(Complex(n + 0.5, 0.0));
            if (std::abs(hv - std::conj(c)) > kInterpTol * (1.0 + std::abs(c)))
                throw SpecError("registered weight does not interpolate conj(c_n) at n = " +
                                std::to_string(n));
        }
        sym.weight = spec.weight_hint;
    }
    return sym;
}

bool self_map_check(const SymbolPair& sym) {
    if (sym.slope > 0.0) return sym.intercept >= 0.0;
    return sym.intercept > 0.0;
}

std::optional<double> interpolation_consistency(const SymbolPair& sym, const MonomialSpec& spec,
                                                int N) {
    if (!sym.weight) return std::nullopt;
    double worst = 0.0;
    for (int n = 0; n < N; ++n) {
        Complex c = spec.coefficient(n);
        Complex hv = sym.weight->eval(Complex(n + 0.5, 0.0));
        worst = std::max(worst, std::abs(hv - std::conj(c)));
    }
    return worst;
}

// ---- Blaschke test --------------------------------------------------------------

NodeRule NodeRule::affine(Complex slope, Complex offset) {
    NodeRule r;
    r.kind = Kind::Affine;
    r.slope = slope;
    r.offset = offset;
    return r;
}

NodeRule NodeRule::geometric(Complex first, Complex ratio) {
    NodeRule r;
    r.kind = Kind::Geometric;
    r.offset = first;
    r.ratio = ratio;
    return r;
}

NodeRule NodeRule::explicit_nodes(std::vector<Complex> values, std::optional<double> tail_bound) {
    NodeRule r;
    r.kind = Kind::Explicit;
    r.values = std::move(values);
    r.tail_bound = tail_bound;
    return r;
}

Complex NodeRule::node(int n) const {
    switch (kind) {
        case Kind::Affine: return slope * static_cast<double>(n) + offset;
        case Kind::Geometric: {
            Complex acc = offset;
            for (int k = 0; k < n; ++k) acc *= ratio;
            return acc;
        }
        case Kind::Explicit:
            if (n < static_cast<int>(values.size())) return values[static_cast<std::size_t>(n)];
            return Complex(0.0);
    }
    return Complex(0.0);
}

namespace {
double blaschke_term(Complex z) { return z.real() / (1.0 + std::norm(z)); }
}  // namespace

double blaschke_partial_sum(const NodeRule& rule, int N) {
    double s = 0.0;
    int count = rule.kind == NodeRule::Kind::Explicit
                    ? std::min<int>(N, static_cast<int>(rule.values.size()))
                    : N;
    for (int n = 0; n < count; ++n) s += blaschke_term(rule.node(n));
    return s;
}

BlaschkeResult blaschke_test(const NodeRule& rule, int n_probe) {
    int probe = rule.kind == NodeRule::Kind::Explicit
                    ? std::min<int>(n_probe, static_cast<int>(rule.values.size()))
                    : n_probe;
    for (int n = 0; n < probe; ++n) {
        Complex z = rule.node(n);
        if (z.real() < -kAxisTol * (1.0 + std::abs(z)))
            throw SpecError("node outside the closed right half-plane at index " + std::to_string(n));
    }
    switch (rule.kind) {
        case NodeRule::Kind::Affine: {
            if (rule.slope.real() > 0.0) return BlaschkeResult::NotBlaschke;  // terms ~ 1/n
            if (rule.slope != Complex(0.0)) return BlaschkeResult::Blaschke;  // terms ~ 1/n^2
            // constant sequence
            return rule.offset.real() > 0.0 ? BlaschkeResult::NotBlaschke : BlaschkeResult::Blaschke;
        }
        case NodeRule::Kind::Geometric: {
            if (rule.offset == Complex(0.0)) return BlaschkeResult::Blaschke;
            double q = std::abs(rule.ratio);
            if (rule.ratio == Complex(1.0))
                return rule.offset.real() > 0.0 ? BlaschkeResult::NotBlaschke
                                                : BlaschkeResult::Blaschke;
            // |r| < 1: terms ~ |z_n|; |r| > 1: terms ~ 1/|z_n|; |r| = 1, r != 1:
            // nonnegative terms with bounded partial sums. All converge.
            (void)q;
            return BlaschkeResult::Blaschke;
        }
        case NodeRule::Kind::Explicit: {
            if (rule.tail_bound && std::isfinite(*rule.tail_bound)) return BlaschkeResult::Blaschke;
            return BlaschkeResult::Inconclusive;
        }
    }
    return BlaschkeResult::Inconclusive;
}

// ---- Muntz density --------------------------------------------------------------

IndexSetRule IndexSetRule::all() { return IndexSetRule{}; }

IndexSetRule IndexSetRule::arithmetic(long start, long step) {
    IndexSetRule r;
    r.kind = Kind::Arithmetic;
    r.start = start;
    r.step = step;
    return r;
}

IndexSetRule IndexSetRule::geometric(long first, long ratio) {
    IndexSetRule r;
    r.kind = Kind::Geometric;
    r.first = first;
    r.ratio = ratio;
    return r;
}

IndexSetRule IndexSetRule::explicit_set(std::vector<long> values, bool tail_declared_empty) {
    IndexSetRule r;
    r.kind = Kind::Explicit;
    r.values = std::move(values);
    r.tail_declared_empty = tail_declared_empty;
    return r;
}

double muntz_partial_sum(const IndexSetRule& rule, int N) {
    double s = 0.0;
    switch (rule.kind) {
        case IndexSetRule::Kind::All:
            for (int n = 0; n < N; ++n) s += 1.0 / (n + 1.0);
            break;
        case IndexSetRule::Kind::Arithmetic:
            for (int k = 0; k < N; ++k) s += 1.0 / (rule.start + static_cast<long>(k) * rule.step + 1.0);
            break;
        case IndexSetRule::Kind::Geometric: {
            double v = static_cast<double>(rule.first);
            for (int k = 0; k < N && std::isfinite(v); ++k, v *= static_cast<double>(rule.ratio))
                s += 1.0 / (v + 1.0);
            break;
        }
        case IndexSetRule::Kind::Explicit:
            for (int k = 0; k < N && k < static_cast<int>(rule.values.size()); ++k)
                s += 1.0 / (rule.values[static_cast<std::size_t>(k)] + 1.0);
            break;
    }
    return s;
}

MuntzResult muntz_density(const IndexSetRule& rule, int n_probe) {
    (void)n_probe;
    switch (rule.kind) {
        case IndexSetRule::Kind::All: return MuntzResult::Dense;
        case IndexSetRule::Kind::Arithmetic:
            if (rule.step <= 0) throw SpecError("arithmetic index rule needs step >= 1");
            return MuntzResult::Dense;  // harmonic comparison
        case IndexSetRule::Kind::Geometric:
            if (rule.ratio < 2 || rule.first < 1)
                throw SpecError("geometric index rule needs first >= 1, ratio >= 2");
            return MuntzResult::NotDense;  // dominated by a geometric series
        case IndexSetRule::Kind::Explicit:
            return rule.tail_declared_empty ? MuntzResult::NotDense : MuntzResult::Inconclusive;
    }
    return MuntzResult::Inconclusive;
}

// ---- Angular derivative ----------------------------------------------------------

double angular_derivative(const SymbolPair& sym) {
    if (sym.slope > 0.0) return 1.0 / sym.slope;
    return std::numeric_limits<double>::infinity();
}

// ---- Fast path -------------------------------------------------------------------

const char* to_string(FastTag tag) {
    switch (tag) {
        case FastTag::Deferred: return "deferred";
        case FastTag::InvalidExponent: return "invalid-exponent";
        case FastTag::NotSelfMap: return "not-self-map";
        case FastTag::AxisPole: return "axis-pole";
        case FastTag::ZeroOperator: return "zero-operator";
        case FastTag::RankOneCompact: return "rank-one-compact";
        case FastTag::RankOneUnbounded: return "rank-one-unbounded";
        case FastTag::RankOneInconclusive: return "rank-one-inconclusive";
        case FastTag::SquareIntegrableCompact: return "square-integrable-compact";
        case FastTag::BoundaryLine: return "boundary-line";
    }
    return "?";
}

namespace {

// h in H^2(C_+): poles strictly in the open left half-plane and decay at
// infinity (deg den >= deg num + 1).
bool rational_in_h2(const RationalSymbol& h) {
    if (h.zero()) return true;
    if (poly::degree(h.den) < poly::degree(h.num) + 1) return false;
    for (Complex r : poly::roots(h.den)) {
        if (r.real() >= -kAxisTol * (1.0 + std::abs(r))) return false;
    }
    return true;
}

}  // namespace

FastPath classify_fast_path(const MonomialSpec& spec, const SymbolPair& sym) {
    FastPath out;
    if (!(spec.exponent(0) > -0.5)) {
        out.verdict = Verdict::Unbounded;
        out.tag = FastTag::InvalidExponent;
        out.note = "p_0 <= -1/2: x^{p_0} is not square integrable on (0,1)";
        return out;
    }
    if (!self_map_check(sym)) {
        out.verdict = Verdict::Unbounded;
        out.tag = FastTag::NotSelfMap;
        std::ostringstream os;
        os << "phi(s) = " << sym.slope << "*s + " << sym.intercept
           << " is not a self-map of the right half-plane";
        out.note = os.str();
        return out;
    }

    std::optional<RationalSymbol> rat;
    if (sym.weight) rat = RationalSymbol::from_expr(*sym.weight);
    if (rat) out.axis = rational_symbol_classify(*rat);

    if (rat && rat->zero()) {
        out.verdict = Verdict::Compact;
        out.tag = FastTag::ZeroOperator;
        return out;
    }

    if (out.axis && out.axis->kind == AxisClass::AxisPole) {
        out.verdict = Verdict::Unbounded;
        out.tag = FastTag::AxisPole;
        std::ostringstream os;
        os << "|h|^2 is not locally integrable on the axis (pole at y = " << *out.axis->pole_y << ")";
        out.note = os.str();
        return out;
    }

    if (sym.slope == 0.0) {
        // phi constant: W f = h * f(beta) has rank <= 1; bounded iff h lies in
        // H^2, and then compact.
        if (rat) {
            if (rational_in_h2(*rat)) {
                out.verdict = Verdict::Compact;
                out.tag = FastTag::RankOneCompact;
                out.note = "constant symbol: rank-one operator with h in H^2";
            } else {
                out.verdict = Verdict::Unbounded;
                out.tag = FastTag::RankOneUnbounded;
                out.note = "constant symbol: h lies outside H^2";
            }
        } else {
            out.verdict = Verdict::Inconclusive;
            out.tag = FastTag::RankOneInconclusive;
            out.note = "constant symbol without a rational closed form for h";
        }
        return out;
    }

    if (sym.intercept == 0.0) {
        // Measure supported on the boundary axis: the vanishing condition
        // forces |h| = 0 a.e., so a nonzero symbol is never compact.
        // Boundedness is left to the numeric tests.
        out.tag = FastTag::BoundaryLine;
        out.compact_impossible = true;
        out.note = "beta = 0: compactness impossible for a nonzero symbol";
        return out;
    }

    if (out.axis && out.axis->kind == AxisClass::SquareIntegrableOnAxis) {
        out.verdict = Verdict::Compact;
        out.tag = FastTag::SquareIntegrableCompact;
        out.note = "h square integrable on the axis with beta > 0";
        return out;
    }

    return out;  // defer to the measure pipeline
}

}  // namespace monop::symbols
