#include "monop/transforms.hpp"

#include <cmath>

#include "monop/poly.hpp"

namespace monop::transforms {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

Complex kernel_inner(const KernelVector& kw, const KernelVector& kz) {
    return 1.0 / (kz.w + std::conj(kw.w));
}

KernelSpan KernelSpan::single(Complex coeff, Complex w) {
    KernelSpan s;
    s.terms.emplace_back(coeff, KernelVector{w});
    return s;
}

Complex KernelSpan::value(Complex s) const {
    Complex acc(0.0);
    for (const auto& [c, k] : terms) acc += c * k.value(s);
    return acc;
}

bool KernelSpan::zero() const {
    for (const auto& [c, k] : terms)
        if (c != Complex(0.0)) return false;
    return true;
}

Complex h2_inner(const KernelSpan& F, const KernelSpan& G) {
    Complex acc(0.0);
    for (const auto& [a, kw] : F.terms)
        for (const auto& [b, kz] : G.terms) acc += a * std::conj(b) * kernel_inner(kz, kw);
    return acc;
}

double h2_norm_squared(const KernelSpan& F) { return h2_inner(F, F).real(); }

InnerResult h2_inner(const BoundaryFn& F, const BoundaryFn& G, const quadrature::LineOptions& opt) {
    auto r = quadrature::integrate_line(
        [&](double y) { return F(y) * std::conj(G(y)); }, opt);
    InnerResult out;
    out.value = r.value / kTwoPi;
    out.error_estimate = r.error_estimate / kTwoPi;
    out.tail_estimate = r.tail_estimate / kTwoPi;
    out.warning = r.warning;
    return out;
}

Complex j_forward(const std::function<Complex(double)>& f, double t) {
    return std::exp(-t / 2.0) * f(std::exp(-t));
}

Complex j_inverse(const std::function<Complex(double)>& g, double x) {
    return g(-std::log(x)) / std::sqrt(x);
}

KernelSpan t0_on_kernels(const symbols::MonomialSpec& spec, int n) {
    Complex c = spec.coefficient(n);
    double p = spec.exponent(n);
    if (!(p > -0.5)) throw SpecError("t0_on_kernels requires Re p_n > -1/2");
    if (c == Complex(0.0)) return {};
    return KernelSpan::single(c, Complex(p + 0.5, 0.0));
}

std::pair<Complex, Complex> t0_image(Complex c_n, Complex p_n) {
    return {c_n, std::conj(p_n) + 0.5};
}

BoundaryFn weighted_comp_apply(const expr::ComplexExpr& h, const symbols::SymbolPair& phi,
                               const KernelSpan& F) {
    return [h, phi, F](double y) {
        Complex s(0.0, y);
        return h.eval(s) * F.value(phi.phi(s));
    };
}

BoundaryFn weighted_comp_apply(const expr::ComplexExpr& h, const symbols::SymbolPair& phi,
                               const BoundaryFn& F) {
    if (phi.intercept != 0.0)
        throw SpecError("boundary-sampled composition needs beta == 0; interior values of F "
                        "are not available from samples");
    double a = phi.slope;
    return [h, a, F](double y) {
        Complex s(0.0, y);
        return h.eval(s) * F(a * y);
    };
}

namespace {

// The boundary integral computes <k_u, W k_v> only when W k_v lies in H^2:
// self-map phi, rational h with no growth on the axis, and every pole of h
// strictly inside the left half-plane.
bool quadrature_route_valid(const symbols::SymbolPair& sym,
                            const std::optional<symbols::RationalSymbol>& rat) {
    if (!symbols::self_map_check(sym) || sym.slope <= 0.0) return false;
    if (!rat) return false;
    auto cls = symbols::rational_symbol_classify(*rat);
    if (cls.kind != symbols::AxisClass::SquareIntegrableOnAxis &&
        cls.kind != symbols::AxisClass::BoundedOnAxis)
        return false;
    for (poly::Complex r : poly::roots(rat->den)) {
        if (r.real() >= -1e-9 * (1.0 + std::abs(r))) return false;
    }
    return true;
}

}  // namespace

AdjointCheck adjoint_identity_check(const symbols::MonomialSpec& spec,
                                    const symbols::SymbolPair& sym, double u, Complex v,
                                    const quadrature::LineOptions& opt) {
    AdjointCheck out;
    double n_exact = u - 0.5;
    int n = static_cast<int>(std::lround(n_exact));
    if (n < 0 || std::abs(n_exact - n) > 1e-12)
        throw SpecError("adjoint check needs u = n + 1/2 for an integer n >= 0");
    if (!(v.real() > 0.0)) throw SpecError("adjoint check needs Re v > 0");
    if (!sym.weight) throw SpecError("adjoint check needs a closed-form weight");

    Complex c = spec.coefficient(n);
    Complex p(spec.exponent(n), 0.0);
    // <T0 k_u, k_v> = c_n * k_{conj(p_n)+1/2}(v)
    out.lhs = c / (v + p + 0.5);

    auto rat = symbols::RationalSymbol::from_expr(*sym.weight);
    if (quadrature_route_valid(sym, rat)) {
        KernelSpan ku = KernelSpan::single(Complex(1.0), Complex(u, 0.0));
        KernelSpan kv = KernelSpan::single(Complex(1.0), v);
        BoundaryFn w_kv = weighted_comp_apply(*sym.weight, sym, kv);
        BoundaryFn ku_fn = [ku](double y) { return ku.value(Complex(0.0, y)); };
        InnerResult inner = h2_inner(ku_fn, w_kv, opt);
        out.rhs = inner.value;
        out.used_quadrature = true;
        out.warning = inner.warning;
    } else {
        // closed form: <k_u, W k_v> = conj((W k_v)(u)) by the reproducing
        // property, continued analytically in the parameters
        Complex wkv_u = sym.weight->eval(Complex(u, 0.0)) / (sym.phi(Complex(u, 0.0)) + std::conj(v));
        out.rhs = std::conj(wkv_u);
    }
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

NormIdCheck normid_check(const symbols::SymbolPair& sym, const KernelSpan& F,
                         const quadrature::LineOptions& opt) {
    NormIdCheck out;
    if (!sym.weight) throw SpecError("norm identity check needs a closed-form weight");
    if (!(sym.slope > 0.0) || sym.intercept < 0.0)
        throw SpecError("norm identity check needs a > 0 and beta >= 0");

    if (F.zero()) return out;

    // lhs: boundary inner product of W F with itself
    BoundaryFn wf = weighted_comp_apply(*sym.weight, sym, F);
    InnerResult lhs = h2_inner(wf, wf, opt);
    out.lhs = lhs.value.real();
    out.warning = lhs.warning;

    // rhs: line-measure form (1/2pi) int |F(beta + i a y)|^2 |h(iy)|^2 dy,
    // integrated by the measure-side panel scheme
    const expr::ComplexExpr h = *sym.weight;
    double a = sym.slope;
    double beta = sym.intercept;
    auto density = [h, a, beta, F](double y) {
        Complex fz = F.value(Complex(beta, a * y));
        return Complex(std::norm(fz) * std::norm(h.eval(Complex(0.0, y))), 0.0);
    };
    auto rhs = quadrature::integrate_line(density, opt);
    out.rhs = rhs.value.real() / kTwoPi;
    out.warning = out.warning || rhs.warning;

    double scale = std::max({std::abs(out.lhs), std::abs(out.rhs), 1e-30});
    out.relative_residual = std::abs(out.lhs - out.rhs) / scale;
    return out;
}

}  // namespace monop::transforms
