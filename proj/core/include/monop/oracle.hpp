#pragma once

// Independent Galerkin oracle: exact truncations of T in the orthonormal
// shifted-Legendre basis of L^2(0,1), singular-value diagnostics, and the
// closed-form necessary conditions on ||T x^n|| / ||x^n||.
//
// phi_k(x) = sqrt(2k+1) * sum_m (-1)^{k-m} C(k,m) C(k+m,m) x^m, and all
// pairings reduce to <x^p, x^q> = 1/(p+q+1). Matrix entries are formed in
// exact rational arithmetic whenever c_n and p_n are rational (256-bit floats
// otherwise) and converted to doubles only for the final decomposition.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monop/exact.hpp"
#include "monop/symbols.hpp"

namespace monop::oracle {

using Complex = std::complex<double>;

enum class ArithmeticMode { ExactRational, HighPrecisionFloat };
const char* to_string(ArithmeticMode m);

inline constexpr int kExactCap = 64;
inline constexpr int kFloatCap = 128;

// Exact monomial coefficients of phi_k, sharing the factor sqrt(2k+1).
struct LegendreCoeffs {
    int k = 0;
    std::vector<exact::BigInt> monomial;  // ascending; length k+1
};
LegendreCoeffs legendre_coeffs(int k);

// Rational part R[j][k] of the Gram matrix <phi_j, phi_k> = sqrt((2j+1)(2k+1)) R[j][k]
// under the 1/(p+q+1) pairing; exact orthonormality means R = diag(1/(2k+1)).
std::vector<exact::BigRational> legendre_gram_rational(int N);  // row-major N*N

struct GalerkinResult {
    int n = 0;
    ArithmeticMode mode = ArithmeticMode::ExactRational;
    int precision_bits = 0;               // float mode only
    std::vector<Complex> matrix;          // row-major, M[j*n+k] = <T phi_k, phi_j>
    std::vector<double> singular_values;  // descending
    std::uint64_t entry_checksum = 0;

    double sigma_max() const { return singular_values.empty() ? 0.0 : singular_values.front(); }
};

// Forms the N x N compression of T. `preferred` ExactRational silently falls
// back to the float path when a coefficient is not a real rational; the
// result records the mode actually used. Throws SpecError above the caps.
GalerkinResult galerkin_matrix(const symbols::MonomialSpec& spec, int N,
                               ArithmeticMode preferred = ArithmeticMode::ExactRational);

std::string to_json(const GalerkinResult& r, bool include_matrix = false);

enum class SigmaTrend { Bounded, Growing };
const char* to_string(SigmaTrend t);

struct SvScan {
    std::vector<int> n_list;
    std::vector<GalerkinResult> per_n;
    SigmaTrend smax_trend = SigmaTrend::Bounded;
    double growth_ratio = 1.0;        // sigma_max(N_last) / sigma_max(N_first)
    double decay_sigma = 0.0;         // sigma_{k_decay}(N_last)
    int decay_index = 24;             // 1-based k at which decay is probed
    bool decays = false;              // decay_sigma < decay threshold
};

struct SvScanOptions {
    double growth_threshold = 1.2;   // calibrated on the built-in catalog
    int decay_index = 24;
    double decay_threshold = 0.05;
};

SvScan sv_scan(const symbols::MonomialSpec& spec, const std::vector<int>& n_list,
               ArithmeticMode preferred = ArithmeticMode::ExactRational,
               const SvScanOptions& opt = {});

// Closed form of ||T x^n|| / ||x^n|| = |c_n| sqrt((2n+1)/(2 Re p_n + 1)).
double txn_ratio(const symbols::MonomialSpec& spec, int n);
// Companion recomputation through the exact monomial integrals.
double txn_ratio_by_integrals(const symbols::MonomialSpec& spec, int n);

// <e_m, e_n> = sqrt((2m+1)(2n+1))/(m+n+1) for e_n = sqrt(2n+1) x^n.
double weak_gram(int m, int n);

// Necessary conditions from the ratio sequence: boundedness needs it bounded,
// compactness needs it null. Evidence only; never sufficient.
struct NecessaryScan {
    bool bounded_ok = true;   // false = ratios grow beyond the probe-range policy
    bool compact_ok = true;   // false = ratios do not tend to 0
    std::vector<double> ratios;
};
struct NecessaryScanOptions {
    double growth_factor = 4.0;  // last-quarter max vs first-quarter max
    double growth_floor = 1.0;
    double null_tol = 0.05;      // last-quarter max below this => tends to 0
};
NecessaryScan necessary_condition_scan(const symbols::MonomialSpec& spec, int N,
                                       const NecessaryScanOptions& opt = {});

}  // namespace monop::oracle
