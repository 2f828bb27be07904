#include "monop/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

namespace monop::oracle {

using exact::BigInt;
using exact::BigRational;
using exact::HPComplex;
using exact::HPFloat;

const char* to_string(ArithmeticMode m) {
    return m == ArithmeticMode::ExactRational ? "exact" : "float256";
}

const char* to_string(SigmaTrend t) { return t == SigmaTrend::Bounded ? "bounded" : "growing"; }

LegendreCoeffs legendre_coeffs(int k) {
    if (k < 0) throw SpecError("legendre_coeffs needs k >= 0");
    LegendreCoeffs out;
    out.k = k;
    out.monomial.resize(static_cast<std::size_t>(k) + 1);
    // coef_m = (-1)^{k-m} C(k,m) C(k+m,m)
    for (int m = 0; m <= k; ++m) {
        BigInt c1 = 1, c2 = 1;
        for (int j = 0; j < m; ++j) {
            c1 = c1 * (k - j) / (j + 1);        // C(k,m)
            c2 = c2 * (k + m - j) / (j + 1);    // C(k+m,m)
        }
        BigInt v = c1 * c2;
        if ((k - m) % 2 != 0) v = -v;
        out.monomial[static_cast<std::size_t>(m)] = v;
    }
    return out;
}

std::vector<BigRational> legendre_gram_rational(int N) {
    std::vector<LegendreCoeffs> phi;
    phi.reserve(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) phi.push_back(legendre_coeffs(k));
    std::vector<BigRational> gram(static_cast<std::size_t>(N) * N);
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k) {
            BigRational acc(0);
            for (int m = 0; m <= j; ++m) {
                for (int l = 0; l <= k; ++l) {
                    BigInt num = phi[static_cast<std::size_t>(j)].monomial[static_cast<std::size_t>(m)] *
                                 phi[static_cast<std::size_t>(k)].monomial[static_cast<std::size_t>(l)];
                    acc += BigRational(num, BigInt(m + l + 1));
                }
            }
            gram[static_cast<std::size_t>(j) * N + k] = acc;
        }
    }
    return gram;
}

namespace {

std::uint64_t fnv1a_bytes(const unsigned char* data, std::size_t len, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t checksum_matrix(const std::vector<Complex>& m) {
    std::uint64_t h = 14695981039346656037ull;
    for (const Complex& z : m) {
        double parts[2] = {z.real(), z.imag()};
        unsigned char bytes[sizeof(parts)];
        std::memcpy(bytes, parts, sizeof(parts));
        h = fnv1a_bytes(bytes, sizeof(bytes), h);
    }
    return h;
}

std::vector<double> singular_values(const std::vector<Complex>& m, int n) {
    Eigen::MatrixXcd M(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) M(j, k) = m[static_cast<std::size_t>(j) * n + k];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = svd.singularValues()(i);
    return out;
}

// Exact path: everything rational until the final conversion.
std::optional<std::vector<Complex>> form_exact(const symbols::MonomialSpec& spec, int N) {
    std::vector<BigRational> c(static_cast<std::size_t>(N));
    std::vector<BigRational> p(static_cast<std::size_t>(N));
    BigRational a = exact::rational_from_double(spec.exp_slope);
    BigRational b = exact::rational_from_double(spec.exp_intercept);
    for (int m = 0; m < N; ++m) {
        const expr::ComplexExpr* rule = spec.coeff.rule_for(m);
        if (rule) {
            auto v = exact::eval_rational(*rule, BigRational(m));
            if (!v) return std::nullopt;
            c[static_cast<std::size_t>(m)] = *v;
        } else {
            Complex cv = spec.coefficient(m);
            if (cv.imag() != 0.0) return std::nullopt;
            c[static_cast<std::size_t>(m)] = exact::rational_from_double(cv.real());
        }
        p[static_cast<std::size_t>(m)] = a * m + b;
    }

    std::vector<LegendreCoeffs> phi;
    phi.reserve(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) phi.push_back(legendre_coeffs(k));

    // S[j][m] = sum_l coef_{j,l} / (p_m + l + 1), then
    // M[j][k] = sqrt((2j+1)(2k+1)) sum_m coef_{k,m} c_m S[j][m]
    std::vector<BigRational> S(static_cast<std::size_t>(N) * N);
    for (int j = 0; j < N; ++j) {
        for (int m = 0; m < N; ++m) {
            BigRational acc(0);
            for (int l = 0; l <= j; ++l) {
                acc += BigRational(phi[static_cast<std::size_t>(j)].monomial[static_cast<std::size_t>(l)]) /
                       (p[static_cast<std::size_t>(m)] + (l + 1));
            }
            S[static_cast<std::size_t>(j) * N + m] = acc;
        }
    }
    std::vector<Complex> out(static_cast<std::size_t>(N) * N);
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k) {
            BigRational acc(0);
            for (int m = 0; m <= k; ++m) {
                acc += BigRational(phi[static_cast<std::size_t>(k)].monomial[static_cast<std::size_t>(m)]) *
                       c[static_cast<std::size_t>(m)] * S[static_cast<std::size_t>(j) * N + m];
            }
            double scale = std::sqrt((2.0 * j + 1.0) * (2.0 * k + 1.0));
            out[static_cast<std::size_t>(j) * N + k] = Complex(scale * exact::to_double(acc), 0.0);
        }
    }
    return out;
}

std::vector<Complex> form_float(const symbols::MonomialSpec& spec, int N) {
    std::vector<HPComplex> c(static_cast<std::size_t>(N));
    std::vector<HPFloat> p(static_cast<std::size_t>(N));
    for (int m = 0; m < N; ++m) {
        const expr::ComplexExpr* rule = spec.coeff.rule_for(m);
        if (rule) {
            c[static_cast<std::size_t>(m)] = exact::eval_hp(*rule, HPComplex(static_cast<double>(m)));
        } else {
            Complex cv = spec.coefficient(m);
            c[static_cast<std::size_t>(m)] = HPComplex{HPFloat(cv.real()), HPFloat(cv.imag())};
        }
        p[static_cast<std::size_t>(m)] = HPFloat(spec.exp_slope) * m + HPFloat(spec.exp_intercept);
    }
    std::vector<LegendreCoeffs> phi;
    phi.reserve(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) phi.push_back(legendre_coeffs(k));

    std::vector<HPFloat> S(static_cast<std::size_t>(N) * N);
    for (int j = 0; j < N; ++j) {
        for (int m = 0; m < N; ++m) {
            HPFloat acc(0);
            for (int l = 0; l <= j; ++l) {
                acc += HPFloat(phi[static_cast<std::size_t>(j)].monomial[static_cast<std::size_t>(l)]) /
                       (p[static_cast<std::size_t>(m)] + (l + 1));
            }
            S[static_cast<std::size_t>(j) * N + m] = acc;
        }
    }
    std::vector<Complex> out(static_cast<std::size_t>(N) * N);
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k) {
            HPComplex acc(0.0);
            for (int m = 0; m <= k; ++m) {
                HPFloat coef(phi[static_cast<std::size_t>(k)].monomial[static_cast<std::size_t>(m)]);
                HPFloat s = S[static_cast<std::size_t>(j) * N + m];
                acc = acc + HPComplex{coef * c[static_cast<std::size_t>(m)].re * s,
                                      coef * c[static_cast<std::size_t>(m)].im * s};
            }
            double scale = std::sqrt((2.0 * j + 1.0) * (2.0 * k + 1.0));
            Complex z = exact::to_std(acc);
            out[static_cast<std::size_t>(j) * N + k] = scale * z;
        }
    }
    return out;
}

}  // namespace

GalerkinResult galerkin_matrix(const symbols::MonomialSpec& spec, int N, ArithmeticMode preferred) {
    if (N < 1) throw SpecError("galerkin_matrix needs N >= 1");
    if (preferred == ArithmeticMode::ExactRational && N > kExactCap)
        throw SpecError("exact mode is capped at N = " + std::to_string(kExactCap) +
                        " (requested " + std::to_string(N) + "); use float mode");
    if (N > kFloatCap)
        throw SpecError("float mode is capped at N = " + std::to_string(kFloatCap) +
                        " (requested " + std::to_string(N) + ")");
    GalerkinResult out;
    out.n = N;
    if (preferred == ArithmeticMode::ExactRational) {
        auto m = form_exact(spec, N);
        if (m) {
            out.mode = ArithmeticMode::ExactRational;
            out.matrix = std::move(*m);
        } else {
            out.mode = ArithmeticMode::HighPrecisionFloat;
            out.precision_bits = exact::kPrecisionBits;
            out.matrix = form_float(spec, N);
        }
    } else {
        out.mode = ArithmeticMode::HighPrecisionFloat;
        out.precision_bits = exact::kPrecisionBits;
        out.matrix = form_float(spec, N);
    }
    out.singular_values = singular_values(out.matrix, N);
    out.entry_checksum = checksum_matrix(out.matrix);
    return out;
}

std::string to_json(const GalerkinResult& r, bool include_matrix) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"N\":" << r.n << ",\"mode\":\"" << to_string(r.mode) << "\"";
    if (r.mode == ArithmeticMode::HighPrecisionFloat)
        os << ",\"precision_bits\":" << r.precision_bits;
    os << ",\"singular_values\":[";
    for (std::size_t i = 0; i < r.singular_values.size(); ++i)
        os << (i ? "," : "") << r.singular_values[i];
    os << "],\"entry_checksum\":\"" << std::hex << r.entry_checksum << std::dec << "\"";
    if (include_matrix) {
        os << ",\"matrix_re\":[";
        for (std::size_t i = 0; i < r.matrix.size(); ++i)
            os << (i ? "," : "") << r.matrix[i].real();
        os << "],\"matrix_im\":[";
        for (std::size_t i = 0; i < r.matrix.size(); ++i)
            os << (i ? "," : "") << r.matrix[i].imag();
        os << "]";
    }
    os << "}";
    return os.str();
}

SvScan sv_scan(const symbols::MonomialSpec& spec, const std::vector<int>& n_list,
               ArithmeticMode preferred, const SvScanOptions& opt) {
    if (n_list.empty()) throw SpecError("sv_scan needs a nonempty N list");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1]) throw SpecError("sv_scan needs an increasing N list");
    SvScan out;
    out.n_list = n_list;
    for (int n : n_list) out.per_n.push_back(galerkin_matrix(spec, n, preferred));
    double first = out.per_n.front().sigma_max();
    double last = out.per_n.back().sigma_max();
    out.growth_ratio = first > 0.0 ? last / first : (last > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    out.smax_trend = out.growth_ratio > opt.growth_threshold ? SigmaTrend::Growing : SigmaTrend::Bounded;
    const GalerkinResult& final = out.per_n.back();
    out.decay_index = opt.decay_index;
    if (static_cast<int>(final.singular_values.size()) >= opt.decay_index) {
        out.decay_sigma = final.singular_values[static_cast<std::size_t>(opt.decay_index - 1)];
        out.decays = out.decay_sigma < opt.decay_threshold;
    } else {
        out.decay_sigma = final.singular_values.empty() ? 0.0 : final.singular_values.back();
        out.decays = out.decay_sigma < opt.decay_threshold;
    }
    return out;
}

double txn_ratio(const symbols::MonomialSpec& spec, int n) {
    double p = spec.exponent(n);
    if (!(p > -0.5)) throw SpecError("txn_ratio requires Re p_n > -1/2");
    Complex c = spec.coefficient(n);
    return std::abs(c) * std::sqrt((2.0 * n + 1.0) / (2.0 * p + 1.0));
}

double txn_ratio_by_integrals(const symbols::MonomialSpec& spec, int n) {
    // ||c x^p||^2 = |c|^2 / (2p+1) and ||x^n||^2 = 1/(2n+1), by the exact
    // monomial pairing; recomputed through rationals when possible.
    double p = spec.exponent(n);
    Complex c = spec.coefficient(n);
    BigRational image_sq;
    bool exact_ok = false;
    const expr::ComplexExpr* rule = spec.coeff.rule_for(n);
    if (rule) {
        auto cr = exact::eval_rational(*rule, BigRational(n));
        if (cr) {
            BigRational p_rat = exact::rational_from_double(spec.exp_slope) * n +
                                exact::rational_from_double(spec.exp_intercept);
            image_sq = (*cr) * (*cr) / (2 * p_rat + 1);
            exact_ok = true;
        }
    }
    double image_norm_sq = exact_ok ? exact::to_double(image_sq)
                                    : std::norm(c) / (2.0 * p + 1.0);
    double arg_norm_sq = 1.0 / (2.0 * n + 1.0);
    return std::sqrt(image_norm_sq / arg_norm_sq);
}

double weak_gram(int m, int n) {
    if (m < 0 || n < 0) throw SpecError("weak_gram needs m, n >= 0");
    return std::sqrt((2.0 * m + 1.0) * (2.0 * n + 1.0)) / (m + n + 1.0);
}

NecessaryScan necessary_condition_scan(const symbols::MonomialSpec& spec, int N,
                                       const NecessaryScanOptions& opt) {
    NecessaryScan out;
    out.ratios.reserve(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) out.ratios.push_back(txn_ratio(spec, n));
    int quarter = std::max(1, N / 4);
    double head = 0.0, tail = 0.0;
    for (int n = 0; n < quarter; ++n) head = std::max(head, out.ratios[static_cast<std::size_t>(n)]);
    for (int n = N - quarter; n < N; ++n) tail = std::max(tail, out.ratios[static_cast<std::size_t>(n)]);
    out.bounded_ok = !(tail > opt.growth_factor * head && tail > opt.growth_floor);
    out.compact_ok = tail < opt.null_tol;
    return out;
}

}  // namespace monop::oracle
