#pragma once

// Dense complex polynomials, ascending coefficient order.  Used for rational
// symbol normalization and the closed-form window antiderivatives.

#include <complex>
#include <vector>

namespace monop::poly {

using Complex = std::complex<double>;
using Poly = std::vector<Complex>;  // p[k] multiplies x^k; empty == zero

int degree(const Poly& p);                       // -1 for zero polynomial
Poly trim(Poly p, double tol = 0.0);             // drop negligible leading coefficients
double max_abs(const Poly& p);
Complex eval(const Poly& p, Complex x);
Poly add(const Poly& p, const Poly& q);
Poly sub(const Poly& p, const Poly& q);
Poly mul(const Poly& p, const Poly& q);
Poly scale(const Poly& p, Complex c);
Poly derivative(const Poly& p);
Poly antiderivative(const Poly& p);

// Euclidean division p = q*quot + rem, deg rem < deg q. Requires q nonzero.
struct DivMod {
    Poly quot, rem;
};
DivMod divmod(const Poly& p, const Poly& q);

// Monic gcd via Euclid with a relative tolerance; returns [1] when coprime.
// Callers verify cancellations by exact-division remainder checks.
Poly gcd(Poly p, Poly q, double rel_tol = 1e-10);

// All roots via the companion-matrix eigenproblem, sorted by (Re, Im).
std::vector<Complex> roots(const Poly& p);

// Roots clustered into multiplicity groups (relative tolerance).
struct RootGroup {
    Complex root;
    int multiplicity;
};
std::vector<RootGroup> clustered_roots(const Poly& p, double rel_tol = 1e-7);

}  // namespace monop::poly
