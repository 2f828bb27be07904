#pragma once

// Pipeline orchestration: spec ingestion, symbols -> measure -> oracle, and
// machine-readable reports. Reports are deterministic: identical configs
// produce byte-identical JSON regardless of worker-thread count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monop/measure.hpp"
#include "monop/oracle.hpp"
#include "monop/symbols.hpp"
#include "monop/verdict.hpp"

namespace monop::analysis {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

// Operator specification as it arrives from JSON or flags. Either a catalog
// name alone, or the full rule set {coeff_expr, a, b, h_expr?}.
struct SpecInput {
    std::string name;
    std::optional<std::string> coeff_expr;
    double a = 1.0;
    double b = 0.0;
    std::optional<std::string> h_expr;
};

struct OracleOptions {
    bool enabled = true;
    std::vector<int> n_list{8, 16, 32};
    oracle::ArithmeticMode mode = oracle::ArithmeticMode::ExactRational;
    oracle::SvScanOptions scan;
    int necessary_probe = 64;
};

struct AnalysisConfig {
    SpecInput spec;
    measure::DecideConfig decide;
    OracleOptions oracle;
    int threads = 0;  // 0 = hardware concurrency (catalog runs only)
};

struct OracleSummary {
    oracle::ArithmeticMode mode = oracle::ArithmeticMode::ExactRational;
    std::vector<int> n_list;
    std::vector<double> sigma_max;
    std::string smax_trend;
    double growth_ratio = 1.0;
    bool decays = false;
    double decay_sigma = 0.0;
    bool necessary_bounded_ok = true;
    bool necessary_compact_ok = true;
};

struct AnalysisReport {
    std::string name;
    SpecInput spec_echo;
    double slope = 1.0;      // a
    double intercept = 0.0;  // derived beta
    std::string phi_display;
    std::optional<std::string> slope_display_note;  // set when a != 1
    std::optional<std::string> weight_text;
    std::optional<double> interpolation_deviation;
    measure::Decision decision;
    std::optional<OracleSummary> oracle;
    Verdict verdict = Verdict::Inconclusive;
    std::string config_hash;
    std::string tool_version = kToolVersion;
};

// Runs the full pipeline on one spec. Throws SpecError / ParseError on
// invalid input (CLI exit code 1); Inconclusive verdicts map to exit code 2.
AnalysisReport run_analyze(const AnalysisConfig& cfg);

// Canonical JSON (sorted keys, shortest-round-trip floats). No timestamps.
std::string report_to_json(const AnalysisReport& report);

struct CatalogRow {
    std::string name;
    Verdict expected;
    Verdict computed;
    bool match = false;
    AnalysisReport report;
};

struct CatalogOptions {
    std::vector<std::string> only;  // empty = all entries
    AnalysisConfig base;            // thresholds/grids shared by all entries
    std::optional<std::string> emit_windows_dir;
};

// Analyzes catalog entries (in parallel; assembly is sorted by name).
std::vector<CatalogRow> run_catalog(const CatalogOptions& opt = {});
std::string catalog_table(const std::vector<CatalogRow>& rows);
std::string catalog_to_json(const std::vector<CatalogRow>& rows);

struct OracleRunResult {
    std::string name;
    oracle::SvScan scan;
};
OracleRunResult run_oracle(const AnalysisConfig& cfg);
std::string oracle_to_json(const OracleRunResult& r);

// Window-profile CSV for a spec (the measure-scan grid).
std::string windows_csv(const AnalysisConfig& cfg);

// Configuration plumbing.
AnalysisConfig config_from_json(const std::string& text);
std::string config_to_canonical_json(const AnalysisConfig& cfg);
std::uint64_t fnv1a(std::string_view bytes);
std::string config_hash(const AnalysisConfig& cfg);

}  // namespace monop::analysis
