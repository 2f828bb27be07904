#include "monop/catalog.hpp"

#include <stdexcept>

namespace monop {

Verdict verdict_from_string(const std::string& s) {
    if (s == "Unbounded") return Verdict::Unbounded;
    if (s == "BoundedNotCompact") return Verdict::BoundedNotCompact;
    if (s == "Compact") return Verdict::Compact;
    if (s == "Inconclusive") return Verdict::Inconclusive;
    throw SpecError("unknown verdict '" + s + "'");
}

}  // namespace monop

namespace monop::catalog {

namespace {

CatalogEntry make_entry(const std::string& name, const std::string& coeff, double a, double b,
                        const std::string& weight, Verdict expected, const std::string& desc) {
    CatalogEntry e;
    e.name = name;
    e.spec.name = name;
    e.spec.coeff = symbols::CoeffRule::from_expr(expr::ComplexExpr::parse(coeff, "n"));
    e.spec.exp_slope = a;
    e.spec.exp_intercept = b;
    e.spec.weight_hint = expr::ComplexExpr::parse(weight, "s");
    e.weight_text = weight;
    e.expected = expected;
    e.description = desc;
    return e;
}

std::vector<CatalogEntry> build() {
    std::vector<CatalogEntry> v;
    v.push_back(make_entry("volterra", "1/(n+1)", 1.0, 1.0, "1/(s+1/2)", Verdict::Compact,
                           "integration operator f -> int_0^x f"));
    v.push_back(make_entry("hardy", "1/(n+1)", 1.0, 0.0, "1/(s+1/2)", Verdict::BoundedNotCompact,
                           "averaging operator f -> (1/x) int_0^x f"));
    v.push_back(make_entry("shift", "1", 1.0, 1.0, "1", Verdict::BoundedNotCompact,
                           "multiplication by x: x^n -> x^{n+1}"));
    v.push_back(make_entry("t1", "1", 2.0, 0.0, "1", Verdict::Unbounded,
                           "composition f -> f(x^2): x^n -> x^{2n}"));
    v.push_back(make_entry("t2", "1/(2*n+1)", 2.0, 1.0, "1/(2*s)", Verdict::Unbounded,
                           "f -> int_0^x f(t^2) dt: x^n -> x^{2n+1}/(2n+1)"));
    v.push_back(make_entry("t3", "1/(2*n+2)", 2.0, 2.0, "1/(2*s+1)", Verdict::Compact,
                           "f -> int_0^x t f(t^2) dt: x^n -> x^{2n+2}/(2n+2)"));
    v.push_back(make_entry("se_minus_s", "(n+1/2)*exp(-(n+1/2))", 1.0, 1.0, "s*exp(-s)",
                           Verdict::Unbounded,
                           "null coefficients c_n = (n+1/2) e^{-(n+1/2)} with growing axis weight"));
    return v;
}

}  // namespace

const std::vector<CatalogEntry>& builtin() {
    static const std::vector<CatalogEntry> entries = build();
    return entries;
}

std::optional<CatalogEntry> find(const std::string& name) {
    for (const CatalogEntry& e : builtin())
        if (e.name == name) return e;
    return std::nullopt;
}

}  // namespace monop::catalog
