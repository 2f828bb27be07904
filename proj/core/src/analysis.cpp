#include "monop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "monop/catalog.hpp"

namespace monop::analysis {

using nlohmann::json;

namespace {

symbols::MonomialSpec build_spec(const SpecInput& input) {
    if (!input.coeff_expr) {
        if (input.name.empty()) throw SpecError("spec needs either a catalog name or coeff_expr");
        auto entry = catalog::find(input.name);
        if (!entry) throw SpecError("unknown catalog entry '" + input.name + "'");
        return entry->spec;
    }
    if (input.coeff_expr->empty()) throw SpecError("coeff_expr is empty");
    symbols::MonomialSpec spec;
    spec.name = input.name;
    spec.coeff = symbols::CoeffRule::from_expr(expr::ComplexExpr::parse(*input.coeff_expr, "n"));
    spec.exp_slope = input.a;
    spec.exp_intercept = input.b;
    if (input.h_expr && !input.h_expr->empty())
        spec.weight_hint = expr::ComplexExpr::parse(*input.h_expr, "s");
    return spec;
}

SpecInput echo_spec(const SpecInput& input, const symbols::MonomialSpec& spec) {
    SpecInput echo = input;
    echo.name = spec.name.empty() ? input.name : spec.name;
    if (!echo.coeff_expr && spec.coeff.has_closed_form())
        echo.coeff_expr = spec.coeff.closed_form->str();
    echo.a = spec.exp_slope;
    echo.b = spec.exp_intercept;
    if (!echo.h_expr && spec.weight_hint) echo.h_expr = spec.weight_hint->str();
    return echo;
}

json spec_to_json(const SpecInput& s) {
    json j;
    j["name"] = s.name;
    if (s.coeff_expr) j["coeff_expr"] = *s.coeff_expr;
    j["a"] = s.a;
    j["b"] = s.b;
    if (s.h_expr) j["h_expr"] = *s.h_expr;
    return j;
}

json decide_config_to_json(const measure::DecideConfig& c) {
    json j;
    j["bound_sup_threshold"] = c.bound_sup_threshold;
    j["tol_vanish"] = c.tol_vanish;
    j["r_min_exp"] = c.r_min_exp;
    j["box"] = {{"t_max", c.box.t_max},
                {"L_min", c.box.L_min},
                {"L_max", c.box.L_max},
                {"t_lin_span", c.box.t_lin_span},
                {"t_lin_step", c.box.t_lin_step},
                {"quad_rel_tol", c.box.quad.rel_tol},
                {"quad_abs_floor", c.box.quad.abs_floor}};
    return j;
}

json oracle_options_to_json(const OracleOptions& o) {
    json j;
    j["enabled"] = o.enabled;
    j["n_list"] = o.n_list;
    j["mode"] = oracle::to_string(o.mode);
    j["growth_threshold"] = o.scan.growth_threshold;
    j["decay_index"] = o.scan.decay_index;
    j["decay_threshold"] = o.scan.decay_threshold;
    j["necessary_probe"] = o.necessary_probe;
    return j;
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_to_canonical_json(const AnalysisConfig& cfg) {
    json j;
    j["spec"] = spec_to_json(cfg.spec);
    j["decide"] = decide_config_to_json(cfg.decide);
    j["oracle"] = oracle_options_to_json(cfg.oracle);
    return j.dump();  // nlohmann objects are key-sorted: canonical
}

std::string config_hash(const AnalysisConfig& cfg) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(config_to_canonical_json(cfg));
    return os.str();
}

AnalysisConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw SpecError(std::string("config is not valid JSON: ") + e.what());
    }
    AnalysisConfig cfg;
    if (j.contains("spec")) {
        const json& s = j["spec"];
        if (s.contains("name")) cfg.spec.name = s["name"].get<std::string>();
        if (s.contains("coeff_expr")) cfg.spec.coeff_expr = s["coeff_expr"].get<std::string>();
        if (s.contains("a")) cfg.spec.a = s["a"].get<double>();
        if (s.contains("b")) cfg.spec.b = s["b"].get<double>();
        if (s.contains("h_expr")) cfg.spec.h_expr = s["h_expr"].get<std::string>();
    }
    if (j.contains("decide")) {
        const json& d = j["decide"];
        if (d.contains("bound_sup_threshold"))
            cfg.decide.bound_sup_threshold = d["bound_sup_threshold"].get<double>();
        if (d.contains("tol_vanish")) cfg.decide.tol_vanish = d["tol_vanish"].get<double>();
        if (d.contains("r_min_exp")) cfg.decide.r_min_exp = d["r_min_exp"].get<int>();
        if (d.contains("box")) {
            const json& b = d["box"];
            if (b.contains("t_max")) cfg.decide.box.t_max = b["t_max"].get<double>();
            if (b.contains("L_min")) cfg.decide.box.L_min = b["L_min"].get<double>();
            if (b.contains("L_max")) cfg.decide.box.L_max = b["L_max"].get<double>();
            if (b.contains("t_lin_span")) cfg.decide.box.t_lin_span = b["t_lin_span"].get<double>();
            if (b.contains("t_lin_step")) cfg.decide.box.t_lin_step = b["t_lin_step"].get<double>();
            if (b.contains("quad_rel_tol")) cfg.decide.box.quad.rel_tol = b["quad_rel_tol"].get<double>();
            if (b.contains("quad_abs_floor"))
                cfg.decide.box.quad.abs_floor = b["quad_abs_floor"].get<double>();
        }
    }
    if (j.contains("oracle")) {
        const json& o = j["oracle"];
        if (o.contains("enabled")) cfg.oracle.enabled = o["enabled"].get<bool>();
        if (o.contains("n_list")) cfg.oracle.n_list = o["n_list"].get<std::vector<int>>();
        if (o.contains("mode")) {
            std::string m = o["mode"].get<std::string>();
            if (m == "exact") cfg.oracle.mode = oracle::ArithmeticMode::ExactRational;
            else if (m == "float" || m == "float256")
                cfg.oracle.mode = oracle::ArithmeticMode::HighPrecisionFloat;
            else throw SpecError("oracle mode must be 'exact' or 'float'");
        }
        if (o.contains("necessary_probe")) cfg.oracle.necessary_probe = o["necessary_probe"].get<int>();
    }
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    return cfg;
}

AnalysisReport run_analyze(const AnalysisConfig& cfg) {
    symbols::MonomialSpec spec = build_spec(cfg.spec);
    spec.validate();
    AnalysisReport rep;
    rep.name = spec.name.empty() ? "unnamed" : spec.name;
    rep.spec_echo = echo_spec(cfg.spec, spec);
    rep.config_hash = config_hash(cfg);

    symbols::SymbolPair sym = symbols::affine_symbols(spec);
    rep.slope = sym.slope;
    rep.intercept = sym.intercept;
    {
        std::ostringstream os;
        os.precision(12);
        os << "phi(s) = " << sym.slope << "*s + " << sym.intercept;
        rep.phi_display = os.str();
    }
    if (spec.exp_slope != 1.0) {
        std::ostringstream os;
        os.precision(12);
        os << "derived intercept beta = b + (1-a)/2 = " << sym.intercept
           << " differs from the raw intercept b = " << spec.exp_intercept << " when a != 1";
        rep.slope_display_note = os.str();
    }
    if (sym.weight) rep.weight_text = sym.weight->str();
    rep.interpolation_deviation = symbols::interpolation_consistency(sym, spec, 50);

    rep.decision = measure::decide(spec, sym, cfg.decide);
    rep.verdict = rep.decision.verdict;

    if (cfg.oracle.enabled) {
        OracleSummary os;
        oracle::SvScan scan = oracle::sv_scan(spec, cfg.oracle.n_list, cfg.oracle.mode, cfg.oracle.scan);
        os.mode = scan.per_n.front().mode;
        os.n_list = scan.n_list;
        for (const auto& g : scan.per_n) os.sigma_max.push_back(g.sigma_max());
        os.smax_trend = oracle::to_string(scan.smax_trend);
        os.growth_ratio = scan.growth_ratio;
        os.decays = scan.decays;
        os.decay_sigma = scan.decay_sigma;
        auto nec = oracle::necessary_condition_scan(spec, cfg.oracle.necessary_probe);
        os.necessary_bounded_ok = nec.bounded_ok;
        os.necessary_compact_ok = nec.compact_ok;
        rep.oracle = std::move(os);
    }
    return rep;
}

namespace {

json decision_to_json(const measure::Decision& d) {
    json j;
    j["verdict"] = to_string(d.verdict);
    j["fast_path"] = symbols::to_string(d.fast_tag);
    if (!d.notes.empty()) j["notes"] = d.notes;
    if (d.carleson) {
        json c;
        c["sup_psi"] = d.carleson->sup_psi;
        c["argmax_t"] = d.carleson->argmax.center_t;
        c["argmax_L"] = d.carleson->argmax.half_length;
        if (d.carleson->limit_t_inf) c["limit_t_inf"] = *d.carleson->limit_t_inf;
        if (d.carleson->limit_L_inf) c["limit_L_inf"] = *d.carleson->limit_L_inf;
        if (d.carleson->pole_y) c["pole_y"] = *d.carleson->pole_y;
        j["carleson"] = c;
    }
    if (d.band) {
        json b;
        b["sup"] = d.band->sup;
        b["argmax_t"] = d.band->argmax_t;
        b["tail_trend"] = measure::to_string(d.band->tail);
        if (d.band->pole_y) b["pole_y"] = *d.band->pole_y;
        j["band"] = b;
    }
    if (d.naive_vanishing) j["naive_vanishing"] = *d.naive_vanishing;
    if (d.vanishing) {
        json v;
        json trace = json::array();
        for (auto [r, sup] : d.vanishing->r_sup) trace.push_back({{"r", r}, {"sup", sup}});
        v["trace"] = trace;
        v["vanishing"] = d.vanishing->vanishing;
        v["monotone"] = d.vanishing->monotone;
        if (!d.vanishing->witness.empty()) {
            json w = json::array();
            for (const auto& row : d.vanishing->witness)
                w.push_back({{"t", row.t}, {"L", row.L}, {"mass", row.mass}, {"ratio", row.ratio}});
            v["witness"] = w;
        }
        j["vanishing"] = v;
    }
    return j;
}

json report_to_json_obj(const AnalysisReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = r.tool_version;
    j["name"] = r.name;
    j["spec"] = spec_to_json(r.spec_echo);
    json sym;
    sym["a"] = r.slope;
    sym["beta"] = r.intercept;
    sym["phi"] = r.phi_display;
    if (r.slope_display_note) sym["intercept_note"] = *r.slope_display_note;
    if (r.weight_text) sym["h"] = *r.weight_text;
    if (r.interpolation_deviation) sym["interpolation_deviation"] = *r.interpolation_deviation;
    j["symbols"] = sym;
    j["decision"] = decision_to_json(r.decision);
    if (r.oracle) {
        json o;
        o["mode"] = oracle::to_string(r.oracle->mode);
        o["n_list"] = r.oracle->n_list;
        o["sigma_max"] = r.oracle->sigma_max;
        o["smax_trend"] = r.oracle->smax_trend;
        o["growth_ratio"] = r.oracle->growth_ratio;
        o["decays"] = r.oracle->decays;
        o["decay_sigma"] = r.oracle->decay_sigma;
        o["necessary_bounded_ok"] = r.oracle->necessary_bounded_ok;
        o["necessary_compact_ok"] = r.oracle->necessary_compact_ok;
        j["oracle"] = o;
    }
    j["verdict"] = to_string(r.verdict);
    j["config_hash"] = r.config_hash;
    return j;
}

}  // namespace

std::string report_to_json(const AnalysisReport& report) {
    return report_to_json_obj(report).dump(2) + "\n";
}

std::vector<CatalogRow> run_catalog(const CatalogOptions& opt) {
    std::vector<catalog::CatalogEntry> entries;
    for (const auto& e : catalog::builtin()) {
        if (opt.only.empty() ||
            std::find(opt.only.begin(), opt.only.end(), e.name) != opt.only.end())
            entries.push_back(e);
    }
    if (!opt.only.empty()) {
        for (const std::string& name : opt.only)
            if (!catalog::find(name)) throw SpecError("unknown catalog entry '" + name + "'");
    }

    unsigned workers = opt.base.threads > 0 ? static_cast<unsigned>(opt.base.threads)
                                            : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(entries.size()) + 1u);

    auto analyze_one = [&](const catalog::CatalogEntry& e) {
        AnalysisConfig cfg = opt.base;
        cfg.spec = SpecInput{};
        cfg.spec.name = e.name;
        CatalogRow row;
        row.name = e.name;
        row.expected = e.expected;
        row.report = run_analyze(cfg);
        row.computed = row.report.verdict;
        row.match = row.computed == row.expected;
        return row;
    };

    std::vector<CatalogRow> rows(entries.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < entries.size(); ++i) rows[i] = analyze_one(entries[i]);
    } else {
        std::vector<std::future<CatalogRow>> futures;
        futures.reserve(entries.size());
        for (const auto& e : entries)
            futures.push_back(std::async(std::launch::async, analyze_one, std::cref(e)));
        for (std::size_t i = 0; i < futures.size(); ++i) rows[i] = futures[i].get();
    }
    std::sort(rows.begin(), rows.end(),
              [](const CatalogRow& x, const CatalogRow& y) { return x.name < y.name; });

    if (opt.emit_windows_dir) {
        for (const CatalogRow& row : rows) {
            AnalysisConfig cfg = opt.base;
            cfg.spec = SpecInput{};
            cfg.spec.name = row.name;
            std::string csv;
            try {
                csv = windows_csv(cfg);
            } catch (const SpecError&) {
                continue;  // entries without a usable line measure have no profile
            }
            std::ofstream out(*opt.emit_windows_dir + "/" + row.name + "_windows.csv");
            out << csv;
        }
    }
    return rows;
}

std::string catalog_table(const std::vector<CatalogRow>& rows) {
    std::ostringstream os;
    os << std::left << std::setw(12) << "name" << std::setw(20) << "expected" << std::setw(20)
       << "computed" << "match\n";
    int matches = 0;
    for (const CatalogRow& r : rows) {
        os << std::left << std::setw(12) << r.name << std::setw(20) << to_string(r.expected)
           << std::setw(20) << to_string(r.computed) << (r.match ? "yes" : "NO") << "\n";
        matches += r.match ? 1 : 0;
    }
    os << matches << "/" << rows.size() << " entries match\n";
    return os.str();
}

std::string catalog_to_json(const std::vector<CatalogRow>& rows) {
    json j = json::array();
    for (const CatalogRow& r : rows) {
        json row;
        row["name"] = r.name;
        row["expected"] = to_string(r.expected);
        row["computed"] = to_string(r.computed);
        row["match"] = r.match;
        row["report"] = report_to_json_obj(r.report);
        j.push_back(row);
    }
    return j.dump(2) + "\n";
}

OracleRunResult run_oracle(const AnalysisConfig& cfg) {
    symbols::MonomialSpec spec = build_spec(cfg.spec);
    spec.validate();
    OracleRunResult out;
    out.name = spec.name.empty() ? "unnamed" : spec.name;
    out.scan = oracle::sv_scan(spec, cfg.oracle.n_list, cfg.oracle.mode, cfg.oracle.scan);
    return out;
}

std::string oracle_to_json(const OracleRunResult& r) {
    json j;
    j["name"] = r.name;
    j["smax_trend"] = oracle::to_string(r.scan.smax_trend);
    j["growth_ratio"] = r.scan.growth_ratio;
    j["decay_sigma"] = r.scan.decay_sigma;
    j["decay_index"] = r.scan.decay_index;
    j["decays"] = r.scan.decays;
    json per = json::array();
    for (const auto& g : r.scan.per_n) per.push_back(json::parse(oracle::to_json(g)));
    j["truncations"] = per;
    return j.dump(2) + "\n";
}

std::string windows_csv(const AnalysisConfig& cfg) {
    symbols::MonomialSpec spec = build_spec(cfg.spec);
    spec.validate();
    symbols::SymbolPair sym = symbols::affine_symbols(spec);
    measure::LineMeasure m = measure::LineMeasure::from_symbols(sym);
    return measure::window_profile(m, cfg.decide.box).to_csv();
}

}  // namespace monop::analysis
