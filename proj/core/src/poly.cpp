#include "monop/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace monop::poly {

int degree(const Poly& p) {
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
        if (p[k] != Complex(0.0)) return k;
    return -1;
}

Poly trim(Poly p, double tol) {
    while (!p.empty() && std::abs(p.back()) <= tol) p.pop_back();
    return p;
}

double max_abs(const Poly& p) {
    double m = 0.0;
    for (const Complex& c : p) m = std::max(m, std::abs(c));
    return m;
}

Complex eval(const Poly& p, Complex x) {
    Complex acc(0.0);
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) acc = acc * x + p[k];
    return acc;
}

Poly add(const Poly& p, const Poly& q) {
    Poly r(std::max(p.size(), q.size()), Complex(0.0));
    for (std::size_t k = 0; k < p.size(); ++k) r[k] += p[k];
    for (std::size_t k = 0; k < q.size(); ++k) r[k] += q[k];
    return r;
}

Poly sub(const Poly& p, const Poly& q) {
    Poly r(std::max(p.size(), q.size()), Complex(0.0));
    for (std::size_t k = 0; k < p.size(); ++k) r[k] += p[k];
    for (std::size_t k = 0; k < q.size(); ++k) r[k] -= q[k];
    return r;
}

Poly mul(const Poly& p, const Poly& q) {
    if (p.empty() || q.empty()) return {};
    Poly r(p.size() + q.size() - 1, Complex(0.0));
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = 0; b < q.size(); ++b) r[a + b] += p[a] * q[b];
    return r;
}

Poly scale(const Poly& p, Complex c) {
    Poly r = p;
    for (Complex& x : r) x *= c;
    return r;
}

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly r(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) r[k - 1] = p[k] * Complex(static_cast<double>(k));
    return r;
}

Poly antiderivative(const Poly& p) {
    Poly r(p.size() + 1, Complex(0.0));
    for (std::size_t k = 0; k < p.size(); ++k) r[k + 1] = p[k] / Complex(static_cast<double>(k + 1));
    return r;
}

DivMod divmod(const Poly& p, const Poly& q) {
    int dq = degree(q);
    if (dq < 0) throw std::invalid_argument("polynomial division by zero");
    Poly rem = p;
    int dr = degree(rem);
    if (dr < dq) return {Poly{}, std::move(rem)};
    Poly quot(static_cast<std::size_t>(dr - dq + 1), Complex(0.0));
    Complex lead = q[static_cast<std::size_t>(dq)];
    for (int k = dr; k >= dq; --k) {
        Complex c = rem[static_cast<std::size_t>(k)] / lead;
        quot[static_cast<std::size_t>(k - dq)] = c;
        if (c == Complex(0.0)) continue;
        for (int j = 0; j <= dq; ++j) rem[static_cast<std::size_t>(k - dq + j)] -= c * q[static_cast<std::size_t>(j)];
        rem[static_cast<std::size_t>(k)] = Complex(0.0);
    }
    rem.resize(static_cast<std::size_t>(dq) > 0 ? static_cast<std::size_t>(dq) : 0);
    return {std::move(quot), std::move(rem)};
}

Poly gcd(Poly p, Poly q, double rel_tol) {
    p = trim(std::move(p), rel_tol * max_abs(p));
    q = trim(std::move(q), rel_tol * max_abs(q));
    if (degree(p) < 0) return q;
    if (degree(q) < 0) return p;
    if (degree(p) < degree(q)) std::swap(p, q);
    while (true) {
        if (degree(q) < 0) break;
        Poly r = divmod(p, q).rem;
        r = trim(std::move(r), rel_tol * std::max(max_abs(p), max_abs(q)));
        p = std::move(q);
        q = std::move(r);
    }
    // monic
    Complex lead = p.back();
    for (Complex& c : p) c /= lead;
    return p;
}

std::vector<Complex> roots(const Poly& p_in) {
    Poly p = trim(p_in, 0.0);
    int d = degree(p);
    if (d <= 0) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    Complex lead = p[static_cast<std::size_t>(d)];
    for (int k = 0; k < d; ++k) companion(k, d - 1) = -p[static_cast<std::size_t>(k)] / lead;
    for (int k = 1; k < d; ++k) companion(k, k - 1) = Complex(1.0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
    std::vector<Complex> out(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) out[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

std::vector<RootGroup> clustered_roots(const Poly& p, double rel_tol) {
    std::vector<Complex> rs = roots(p);
    std::vector<RootGroup> groups;
    double scale = 0.0;
    for (Complex r : rs) scale = std::max(scale, std::abs(r));
    double tol = rel_tol * (1.0 + scale);
    for (Complex r : rs) {
        bool merged = false;
        for (RootGroup& g : groups) {
            if (std::abs(r - g.root) <= tol) {
                // running mean keeps the cluster center stable
                g.root = (g.root * static_cast<double>(g.multiplicity) + r) /
                         static_cast<double>(g.multiplicity + 1);
                ++g.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) groups.push_back({r, 1});
    }
    return groups;
}

}  // namespace monop::poly
