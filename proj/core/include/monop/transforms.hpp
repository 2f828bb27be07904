#pragma once

// The unitary chain L^2(0,1) -> L^2(0,inf) -> H^2(C_+) and numeric checks of
// the adjoint/weighted-composition identities on reproducing kernels.
//
// Inner product normalization: <F, G> = (1/2pi) integral F(iy) conj(G(iy)) dy,
// so the Laplace transform is unitary and <k_w, k_z> = 1/(z + conj(w)) with
// k_w(s) = 1/(s + conj(w)).

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "monop/expr.hpp"
#include "monop/quadrature.hpp"
#include "monop/symbols.hpp"

namespace monop::transforms {

using Complex = std::complex<double>;

struct KernelVector {
    Complex w;  // Re w > 0
    Complex value(Complex s) const { return 1.0 / (s + std::conj(w)); }
};

// <k_w, k_z> = k_w(z) = 1/(z + conj(w))
Complex kernel_inner(const KernelVector& kw, const KernelVector& kz);

struct KernelSpan {
    std::vector<std::pair<Complex, KernelVector>> terms;

    static KernelSpan single(Complex coeff, Complex w);
    Complex value(Complex s) const;
    bool zero() const;
};

// Closed-form inner product of two kernel spans.
Complex h2_inner(const KernelSpan& F, const KernelSpan& G);
double h2_norm_squared(const KernelSpan& F);

// Boundary-sampled H^2 function y |-> F(iy).
using BoundaryFn = std::function<Complex(double)>;

struct InnerResult {
    Complex value{};
    double error_estimate = 0.0;
    double tail_estimate = 0.0;
    bool warning = false;  // tail estimate above tolerance
};

// (1/2pi) integral F(iy) conj(G(iy)) dy by adaptive quadrature with tail
// truncation at y_max and a first-order tail correction.
InnerResult h2_inner(const BoundaryFn& F, const BoundaryFn& G,
                     const quadrature::LineOptions& opt = {});

// Isometry J : L^2(0,1) -> L^2(0,inf), (Jf)(t) = e^{-t/2} f(e^{-t}).
Complex j_forward(const std::function<Complex(double)>& f, double t);
// Inverse (J^{-1}g)(x) = g(-log x)/sqrt(x) for x in (0,1).
Complex j_inverse(const std::function<Complex(double)>& g, double x);

// Image of k_{n+1/2} under the transferred operator: c_n * k_{conj(p_n)+1/2}.
KernelSpan t0_on_kernels(const symbols::MonomialSpec& spec, int n);
// Same mapping for a synthetic coefficient/exponent pair (complex p allowed).
std::pair<Complex, Complex> t0_image(Complex c_n, Complex p_n);

// Pointwise action y |-> h(iy) * F(phi(iy)) for a kernel span (closed-form
// evaluation valid for any beta >= 0).
BoundaryFn weighted_comp_apply(const expr::ComplexExpr& h, const symbols::SymbolPair& phi,
                               const KernelSpan& F);
// Boundary-sampled argument; only valid when the symbol fixes the axis
// (beta == 0), otherwise interior values of F would be required.
BoundaryFn weighted_comp_apply(const expr::ComplexExpr& h, const symbols::SymbolPair& phi,
                               const BoundaryFn& F);

// |<T0 k_u, k_v> - <k_u, W_{h,phi} k_v>| with the left side in closed form.
// The right side uses boundary quadrature whenever W k_v is square integrable
// on the axis (self-map, rational h, no axis pole, deg num <= deg den) and
// falls back to closed-form evaluation conj(h(u) k_v(phi(u))) otherwise.
struct AdjointCheck {
    double residual = 0.0;
    Complex lhs{}, rhs{};
    bool used_quadrature = false;
    bool warning = false;
};
AdjointCheck adjoint_identity_check(const symbols::MonomialSpec& spec,
                                    const symbols::SymbolPair& sym, double u, Complex v,
                                    const quadrature::LineOptions& opt = {});

// Norm identity ||W_{h,phi} F||^2 = integral |F|^2 dmu, both sides by
// independent quadrature routes (boundary inner product vs line-measure form).
struct NormIdCheck {
    double lhs = 0.0, rhs = 0.0;
    double relative_residual = 0.0;
    bool warning = false;
};
NormIdCheck normid_check(const symbols::SymbolPair& sym, const KernelSpan& F,
                         const quadrature::LineOptions& opt = {});

}  // namespace monop::transforms
