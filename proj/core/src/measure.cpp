#include "monop/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "monop/poly.hpp"

namespace monop::measure {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPoleMargin = 1e-6;

std::string format_num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// ---- closed-form integration of real rational densities ------------------------
//
// |h(iy)|^2 = A(y)/B(y) with A = P(iy) conj(P)(iy)-bar and B likewise from Q;
// both have real coefficients. Integrals come from partial fractions over the
// clustered roots of B; log terms stay on one branch because no root is real
// (axis poles are filtered into the +inf sentinel first).

struct RationalDensity {
    poly::Poly num;                      // A
    poly::Poly den;                      // B
    poly::Poly quot;                     // polynomial part S of A/B
    poly::Poly rem;                      // proper numerator A1
    struct PoleTerm {
        poly::Complex root;
        int multiplicity;
        std::vector<poly::Complex> series;  // G_i -> G_i / (y-root)^{m-i}
    };
    std::vector<PoleTerm> poles;
    std::vector<double> axis_poles;      // real roots of B (poles of the density)
};

poly::Poly substitute_iy(const std::vector<poly::Complex>& p) {
    poly::Poly out(p.size());
    poly::Complex ik(1.0, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        out[k] = p[k] * ik;
        ik *= poly::Complex(0.0, 1.0);
    }
    return out;
}

poly::Poly conj_poly(const poly::Poly& p) {
    poly::Poly out(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) out[k] = std::conj(p[k]);
    return out;
}

// Taylor coefficients of p around r (ascending), via repeated synthetic division.
std::vector<poly::Complex> taylor_at(poly::Poly p, poly::Complex r, int order) {
    std::vector<poly::Complex> out;
    poly::Poly shift{-r, poly::Complex(1.0)};
    for (int k = 0; k <= order; ++k) {
        if (poly::degree(p) < 0) {
            out.push_back(poly::Complex(0.0));
            continue;
        }
        auto dm = poly::divmod(p, shift);
        out.push_back(dm.rem.empty() ? poly::Complex(0.0) : dm.rem[0]);
        p = std::move(dm.quot);
    }
    return out;
}

RationalDensity make_density(const symbols::RationalSymbol& h) {
    RationalDensity d;
    poly::Poly pi = substitute_iy(h.num);
    poly::Poly qi = substitute_iy(h.den);
    d.num = poly::mul(pi, conj_poly(pi));
    d.den = poly::mul(qi, conj_poly(qi));
    d.num = poly::trim(d.num, 1e-14 * poly::max_abs(d.num));
    d.den = poly::trim(d.den, 1e-14 * poly::max_abs(d.den));
    auto dm = poly::divmod(d.num, d.den);
    d.quot = dm.quot;
    d.rem = poly::trim(dm.rem, 1e-13 * poly::max_abs(d.num));

    auto groups = poly::clustered_roots(d.den);
    double scale = 0.0;
    for (const auto& g : groups) scale = std::max(scale, std::abs(g.root));
    for (const auto& g : groups) {
        if (std::abs(g.root.imag()) <= 1e-9 * (1.0 + scale)) {
            d.axis_poles.push_back(g.root.real());
            continue;
        }
    }
    std::sort(d.axis_poles.begin(), d.axis_poles.end());
    if (!d.axis_poles.empty()) return d;  // sentinel path; no expansion needed

    poly::Complex lead = d.den[static_cast<std::size_t>(poly::degree(d.den))];
    for (const auto& g : groups) {
        // deflate B by (y - r)^m
        poly::Poly deflated = d.den;
        poly::Poly shift{-g.root, poly::Complex(1.0)};
        for (int k = 0; k < g.multiplicity; ++k) deflated = poly::divmod(deflated, shift).quot;
        auto a_ser = taylor_at(d.rem, g.root, g.multiplicity - 1);
        auto b_ser = taylor_at(deflated, g.root, g.multiplicity - 1);
        // invert b_ser as a power series
        std::vector<poly::Complex> inv(static_cast<std::size_t>(g.multiplicity));
        inv[0] = poly::Complex(1.0) / b_ser[0];
        for (int k = 1; k < g.multiplicity; ++k) {
            poly::Complex acc(0.0);
            for (int j = 1; j <= k; ++j) acc += b_ser[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
            inv[static_cast<std::size_t>(k)] = -acc / b_ser[0];
        }
        RationalDensity::PoleTerm term;
        term.root = g.root;
        term.multiplicity = g.multiplicity;
        term.series.resize(static_cast<std::size_t>(g.multiplicity));
        for (int k = 0; k < g.multiplicity; ++k) {
            poly::Complex acc(0.0);
            for (int j = 0; j <= k; ++j) acc += a_ser[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
            term.series[static_cast<std::size_t>(k)] = acc;
        }
        d.poles.push_back(std::move(term));
    }
    (void)lead;
    return d;
}

double definite_integral(const RationalDensity& d, double y0, double y1) {
    poly::Complex acc(0.0);
    if (!d.quot.empty()) {
        poly::Poly anti = poly::antiderivative(d.quot);
        acc += poly::eval(anti, poly::Complex(y1)) - poly::eval(anti, poly::Complex(y0));
    }
    for (const auto& term : d.poles) {
        for (int i = 0; i < term.multiplicity; ++i) {
            int p = term.multiplicity - i;  // power of 1/(y-r)
            poly::Complex g = term.series[static_cast<std::size_t>(i)];
            if (g == poly::Complex(0.0)) continue;
            poly::Complex z1 = poly::Complex(y1) - term.root;
            poly::Complex z0 = poly::Complex(y0) - term.root;
            if (p == 1) {
                acc += g * std::log(z1 / z0);
            } else {
                double e = 1.0 - p;
                acc += g * (std::pow(z1, e) - std::pow(z0, e)) / e;
            }
        }
    }
    return acc.real();
}

double total_integral(const RationalDensity& d) {
    if (!d.quot.empty()) return kInf;
    if (poly::degree(d.rem) > poly::degree(d.den) - 2) return kInf;
    poly::Complex acc(0.0);
    for (const auto& term : d.poles) {
        if (term.root.imag() <= 0.0) continue;
        acc += term.series[static_cast<std::size_t>(term.multiplicity - 1)];  // residue
    }
    acc *= poly::Complex(0.0, 2.0 * 3.14159265358979323846);
    return acc.real();
}

// ---- shared scan machinery -------------------------------------------------------

struct Scan {
    std::vector<double> t_grid;
    std::vector<double> L_grid;
    std::vector<WindowSample> rows;  // row-major over (L, t)
    std::optional<double> pole_y;
    bool any_infinite = false;
};

double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters = 60) {
    const double invphi = 0.6180339887498948482;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int k = 0; k < iters; ++k) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return std::max(fc, fd);
}

}  // namespace

// ---- LineMeasure ------------------------------------------------------------------

LineMeasure LineMeasure::from_symbols(const symbols::SymbolPair& sym) {
    if (!sym.weight)
        throw SpecError("symbol pair has an interpolation-only weight; no density available");
    if (!(sym.slope > 0.0)) throw SpecError("line measure requires slope a > 0");
    if (sym.intercept < 0.0) throw SpecError("line measure requires beta >= 0");
    LineMeasure m;
    m.slope = sym.slope;
    m.abscissa = sym.intercept;
    m.weight = *sym.weight;
    m.rational = symbols::RationalSymbol::from_expr(m.weight);
    return m;
}

double LineMeasure::density(double y) const {
    return std::norm(weight.eval(Complex(0.0, y)));
}

// ---- grids ------------------------------------------------------------------------

std::vector<double> SearchBox::t_grid() const {
    std::vector<double> g;
    for (double t = -t_lin_span; t <= t_lin_span + 1e-12; t += t_lin_step) g.push_back(t);
    for (double v = 0.25; v <= t_max * (1.0 + 1e-12); v *= 2.0) {
        g.push_back(v);
        g.push_back(-v);
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

std::vector<double> SearchBox::L_grid(double beta) const {
    std::vector<double> g;
    for (double L = L_min; L <= L_max * (1.0 + 1e-12); L *= 2.0) g.push_back(L);
    if (beta / 2.0 > L_min && beta / 2.0 < L_max) g.push_back(beta / 2.0);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

// ---- window mass ------------------------------------------------------------------

namespace {

WindowMass integrate_window(const LineMeasure& m, double y0, double y1,
                            const quadrature::Options& opt) {
    if (m.rational) {
        for (double yp : m.rational->axis_pole_ordinates()) {
            if (yp >= y0 - kPoleMargin && yp <= y1 + kPoleMargin) return {kInf, yp};
        }
        if (poly::degree(m.rational->den) <= 2) {
            RationalDensity d = make_density(*m.rational);
            if (!d.axis_poles.empty()) {
                double yp = d.axis_poles.front();
                if (yp >= y0 - kPoleMargin && yp <= y1 + kPoleMargin) return {kInf, yp};
            } else {
                return {definite_integral(d, y0, y1), std::nullopt};
            }
        }
    }
    try {
        auto r = quadrature::integrate_real([&m](double y) { return m.density(y); }, y0, y1, opt);
        return {r.value.real(), std::nullopt};
    } catch (const PoleError& e) {
        return {kInf, e.at().imag()};
    }
}

}  // namespace

WindowMass window_mass(const LineMeasure& m, double t, double L, const quadrature::Options& opt) {
    if (L <= 0.0) throw SpecError("window half-length must be positive");
    if (2.0 * L < m.abscissa) return {0.0, std::nullopt};  // square misses the line
    return integrate_window(m, (t - L) / m.slope, (t + L) / m.slope, opt);
}

WindowMass total_mass(const LineMeasure& m) {
    if (m.rational) {
        RationalDensity d = make_density(*m.rational);
        if (!d.axis_poles.empty()) return {kInf, d.axis_poles.front()};
        return {total_integral(d), std::nullopt};
    }
    try {
        quadrature::LineOptions lo;
        lo.y_max = 1 << 20;
        auto r = quadrature::integrate_line(
            [&m](double y) { return Complex(m.density(y), 0.0); }, lo);
        return {r.value.real(), std::nullopt};
    } catch (const PoleError& e) {
        return {kInf, e.at().imag()};
    }
}

// ---- profiles and scans -------------------------------------------------------------

namespace {

Scan build_scan(const LineMeasure& m, const SearchBox& box) {
    Scan s;
    s.t_grid = box.t_grid();
    s.L_grid = box.L_grid(m.abscissa);
    s.rows.reserve(s.t_grid.size() * s.L_grid.size());
    for (double L : s.L_grid) {
        for (double t : s.t_grid) {
            WindowMass wm = window_mass(m, t, L, box.quad);
            double ratio = wm.value / (2.0 * L);
            s.rows.push_back({t, L, wm.value, ratio});
            if (wm.infinite()) {
                s.any_infinite = true;
                if (!s.pole_y && wm.pole_y) s.pole_y = wm.pole_y;
            }
        }
    }
    return s;
}

}  // namespace

WindowProfile window_profile(const LineMeasure& m, const SearchBox& box) {
    Scan s = build_scan(m, box);
    return WindowProfile{std::move(s.rows)};
}

std::string WindowProfile::to_csv() const {
    std::ostringstream os;
    os << "t,L,mass,ratio\n";
    os.precision(17);
    for (const WindowSample& r : rows)
        os << r.t << ',' << r.L << ',' << r.mass << ',' << r.ratio << '\n';
    return os.str();
}

const char* to_string(TailTrend t) {
    switch (t) {
        case TailTrend::Decaying: return "decaying";
        case TailTrend::Flat: return "flat";
        case TailTrend::Growing: return "growing";
    }
    return "?";
}

BandResult band_sup(const LineMeasure& m, double t_max, const SearchBox& box) {
    BandResult out;
    auto window = [&](double t) -> WindowMass {
        return integrate_window(m, t, t + 1.0, box.quad);
    };
    std::vector<double> grid;
    for (double t = -box.t_lin_span; t <= box.t_lin_span + 1e-12; t += 0.125) grid.push_back(t);
    for (double v = 0.25; v <= t_max * (1.0 + 1e-12); v *= 2.0) {
        grid.push_back(v);
        grid.push_back(-v - 1.0);  // mirror window covering [-v-1, -v]
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    double best = -kInf;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        WindowMass wm = window(grid[i]);
        if (wm.infinite()) {
            out.sup = kInf;
            out.argmax_t = grid[i];
            out.pole_y = wm.pole_y;
            return out;
        }
        if (wm.value > best) {
            best = wm.value;
            best_idx = i;
        }
    }
    double lo = best_idx > 0 ? grid[best_idx - 1] : grid[best_idx];
    double hi = best_idx + 1 < grid.size() ? grid[best_idx + 1] : grid[best_idx];
    double refined = best;
    double arg = grid[best_idx];
    if (hi > lo) {
        // golden-section pass for the value, then a short trisection pass to
        // localize the argmax itself
        refined = std::max(best, golden_max([&](double t) { return window(t).value; }, lo, hi));
        double a = lo, b = hi;
        for (int k = 0; k < 200; ++k) {
            double c1 = a + (b - a) / 3.0, c2 = b - (b - a) / 3.0;
            if (window(c1).value >= window(c2).value) b = c2;
            else a = c1;
        }
        arg = 0.5 * (a + b);
        refined = std::max(refined, window(arg).value);
    }
    out.sup = refined;
    out.argmax_t = arg;

    for (int k = 0; k <= 8; ++k) {
        double t = (t_max / 2.0) * std::exp2(static_cast<double>(k) / 8.0);
        double v = std::max(window(t).value, window(-t - 1.0).value);
        out.tail_samples.emplace_back(t, v);
    }
    double first = (out.tail_samples[0].second + out.tail_samples[1].second +
                    out.tail_samples[2].second) / 3.0;
    double last = (out.tail_samples[6].second + out.tail_samples[7].second +
                   out.tail_samples[8].second) / 3.0;
    if (last > 2.0 * first + 1e-12) out.tail = TailTrend::Growing;
    else if (last < 0.5 * first - 1e-12) out.tail = TailTrend::Decaying;
    else out.tail = TailTrend::Flat;
    return out;
}

CarlesonEstimate carleson_sup_estimate(const LineMeasure& m, const SearchBox& box) {
    CarlesonEstimate out;
    Scan s = build_scan(m, box);
    if (s.any_infinite) {
        out.sup_psi = kInf;
        out.pole_y = s.pole_y;
        return out;
    }
    double best = -kInf;
    WindowSample best_row{0, 0, 0, 0};
    for (const WindowSample& r : s.rows) {
        if (r.ratio > best) {
            best = r.ratio;
            best_row = r;
        }
    }
    auto psi = [&](double t, double L) {
        if (L <= 0.0) return 0.0;
        WindowMass wm = window_mass(m, t, L, box.quad);
        return wm.value / (2.0 * L);
    };
    // coordinate refinement around the argmax
    double t_hat = best_row.t, L_hat = best_row.L, val = best;
    auto neighbors = [](const std::vector<double>& g, double v) {
        auto it = std::lower_bound(g.begin(), g.end(), v);
        double lo = it == g.begin() ? *it : *(it - 1);
        double hi = (it + 1) == g.end() || it == g.end() ? g.back() : *(it + 1);
        return std::pair<double, double>(lo, hi);
    };
    for (int round = 0; round < 2; ++round) {
        auto [tlo, thi] = neighbors(s.t_grid, t_hat);
        if (thi > tlo) {
            double a = tlo, b = thi;
            for (int k = 0; k < 120; ++k) {
                double c1 = a + (b - a) / 3.0, c2 = b - (b - a) / 3.0;
                if (psi(c1, L_hat) >= psi(c2, L_hat)) b = c2;
                else a = c1;
            }
            double cand = 0.5 * (a + b);
            if (psi(cand, L_hat) >= val) {
                t_hat = cand;
                val = psi(cand, L_hat);
            }
        }
        auto [Llo, Lhi] = neighbors(s.L_grid, L_hat);
        double L_floor = std::max(Llo, m.abscissa / 2.0);
        if (Lhi > L_floor) {
            double a = L_floor, b = Lhi;
            for (int k = 0; k < 120; ++k) {
                double c1 = a + (b - a) / 3.0, c2 = b - (b - a) / 3.0;
                if (psi(t_hat, c1) >= psi(t_hat, c2)) b = c2;
                else a = c1;
            }
            double cand = 0.5 * (a + b);
            if (psi(t_hat, cand) >= val) {
                L_hat = cand;
                val = psi(t_hat, cand);
            }
        }
    }
    out.sup_psi = val;
    out.argmax = CarlesonSquare{t_hat, L_hat};

    if (m.rational) {
        auto cls = symbols::rational_symbol_classify(*m.rational);
        switch (cls.kind) {
            case symbols::AxisClass::SquareIntegrableOnAxis:
                out.limit_t_inf = 0.0;
                out.limit_L_inf = 0.0;
                break;
            case symbols::AxisClass::BoundedOnAxis: {
                double l2a = cls.modulus_limit * cls.modulus_limit / m.slope;
                out.limit_t_inf = l2a;
                out.limit_L_inf = l2a;
                break;
            }
            case symbols::AxisClass::GrowsOnAxis:
                out.limit_t_inf = kInf;
                out.limit_L_inf = kInf;
                break;
            case symbols::AxisClass::AxisPole: break;  // unreachable: sentinel path
        }
        if (out.limit_t_inf) out.sup_psi = std::max(out.sup_psi, *out.limit_t_inf);
        if (out.limit_L_inf) out.sup_psi = std::max(out.sup_psi, *out.limit_L_inf);
    }
    return out;
}

bool naive_vanishing_test(const LineMeasure& m, const SearchBox& box, double tol) {
    Scan s = build_scan(m, box);
    double L_min = s.L_grid.front();
    double sup = 0.0;
    for (const WindowSample& r : s.rows)
        if (r.L == L_min) sup = std::max(sup, r.ratio);
    return std::isfinite(sup) && sup < tol;
}

VanishingTrace true_vanishing_test(const LineMeasure& m, const SearchBox& box, int r_min_exp,
                                   double tol) {
    VanishingTrace out;
    Scan s = build_scan(m, box);
    out.pole_y = s.pole_y;
    for (int k = 1; k <= r_min_exp; ++k) {
        double r = std::exp2(-k);
        double inv_r = 1.0 / r;
        double sup = 0.0;
        for (const WindowSample& row : s.rows) {
            bool strip = row.L < r;
            bool far = std::hypot(row.L, row.t) > inv_r;
            if (strip || far) sup = std::max(sup, row.ratio);
        }
        out.r_sup.emplace_back(r, sup);
    }
    for (std::size_t i = 0; i + 1 < out.r_sup.size(); ++i) {
        if (out.r_sup[i + 1].second > out.r_sup[i].second + 1e-12) out.monotone = false;
    }
    double final_sup = out.r_sup.back().second;
    out.vanishing = std::isfinite(final_sup) && final_sup < tol && out.monotone;
    if (!out.vanishing) {
        double r = out.r_sup.back().first;
        double inv_r = 1.0 / r;
        std::vector<WindowSample> members;
        for (const WindowSample& row : s.rows) {
            if (row.L < r || std::hypot(row.L, row.t) > inv_r) members.push_back(row);
        }
        std::sort(members.begin(), members.end(), [](const WindowSample& x, const WindowSample& y) {
            if (x.ratio != y.ratio) return x.ratio > y.ratio;
            if (x.t != y.t) return x.t < y.t;
            return x.L < y.L;
        });
        if (members.size() > 3) members.resize(3);
        out.witness = std::move(members);
    }
    return out;
}

// ---- decide -----------------------------------------------------------------------

Decision decide(const symbols::MonomialSpec& spec, const symbols::SymbolPair& sym,
                const DecideConfig& cfg) {
    Decision d;
    symbols::FastPath fast = symbols::classify_fast_path(spec, sym);
    d.fast_tag = fast.tag;
    if (!fast.note.empty()) d.notes.push_back(fast.note);
    if (fast.verdict) {
        d.verdict = *fast.verdict;
        return d;
    }

    if (!sym.weight) {
        d.verdict = Verdict::Inconclusive;
        d.notes.push_back("interpolation-only weight: Carleson tests unavailable");
        return d;
    }

    LineMeasure m = LineMeasure::from_symbols(sym);
    d.band = band_sup(m, cfg.box.t_max, cfg.box);
    d.carleson = carleson_sup_estimate(m, cfg.box);
    d.naive_vanishing = naive_vanishing_test(m, cfg.box, cfg.tol_vanish);

    if (d.band->infinite() || d.carleson->infinite()) {
        d.verdict = Verdict::Unbounded;
        d.notes.push_back("window mass diverges (pole on the supporting line)");
        return d;
    }
    if (d.carleson->sup_psi > cfg.bound_sup_threshold || d.band->sup > cfg.bound_sup_threshold) {
        d.verdict = Verdict::Unbounded;
        d.notes.push_back("Carleson ratio exceeds the bound threshold " +
                          format_num(cfg.bound_sup_threshold) + " inside the search box");
        return d;
    }
    if (d.band->tail == TailTrend::Growing) {
        d.verdict = Verdict::Inconclusive;
        d.notes.push_back("band windows grow toward the box edge while sup is below threshold");
        return d;
    }

    if (fast.compact_impossible) {
        d.verdict = Verdict::BoundedNotCompact;
        return d;
    }

    d.vanishing = true_vanishing_test(m, cfg.box, cfg.r_min_exp, cfg.tol_vanish);
    if (!d.vanishing->monotone) {
        d.verdict = Verdict::Inconclusive;
        d.notes.push_back("vanishing trace is not monotone; refusing to guess");
        return d;
    }
    d.verdict = d.vanishing->vanishing ? Verdict::Compact : Verdict::BoundedNotCompact;
    return d;
}

// ---- dyadic fallback -----------------------------------------------------------------

DyadicEstimate dyadic_box_estimate(const expr::ComplexExpr& phi, const expr::ComplexExpr& h,
                                   const DyadicOptions& opt) {
    DyadicEstimate out;
    double dy = 2.0 * opt.y_span / static_cast<double>(opt.samples);
    std::map<std::pair<int, long>, double> boxes;
    int k_top = 1;
    std::vector<std::pair<Complex, double>> samples;
    samples.reserve(static_cast<std::size_t>(opt.samples));
    for (int j = 0; j < opt.samples; ++j) {
        double y = -opt.y_span + (j + 0.5) * dy;
        Complex z = phi.eval(Complex(0.0, y));
        if (z.real() < -1e-9 * (1.0 + std::abs(z))) throw NotSelfMapError(z);
        double w = std::norm(h.eval(Complex(0.0, y))) * dy;
        if (w == 0.0) continue;
        samples.emplace_back(z, w);
        while (std::exp2(k_top) < z.real() && k_top < 40) ++k_top;
    }
    for (int k = k_top; k >= -opt.depth; --k) {
        double side = std::exp2(k);
        for (const auto& [z, w] : samples) {
            if (z.real() > side) continue;
            long cell = static_cast<long>(std::floor(z.imag() / side));
            boxes[{k, cell}] += w;
        }
    }
    for (const auto& [key, mass] : boxes) {
        double ratio = mass / std::exp2(key.first);
        if (ratio > out.sup_ratio) {
            out.sup_ratio = ratio;
            out.argmax_level = key.first;
            out.argmax_index = key.second;
        }
    }
    return out;
}

}  // namespace monop::measure
