// monop: decide boundedness and compactness of monomial operators on L^2(0,1)
// through Carleson-measure tests on the half-plane, with a Galerkin oracle.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "monop/analysis.hpp"
#include "monop/catalog.hpp"

namespace {

using monop::analysis::AnalysisConfig;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInconclusive = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw monop::SpecError("cannot open config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw monop::SpecError("cannot write to '" + path + "'");
    out << body;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<int> split_int_list(const std::string& csv) {
    std::vector<int> out;
    for (const std::string& s : split_list(csv)) out.push_back(std::stoi(s));
    return out;
}

struct CommonFlags {
    std::string config_path;
    std::string name;
    std::string json_path;
    std::string n_list;
    std::string mode;
    int threads = 0;

    AnalysisConfig load() const {
        AnalysisConfig cfg;
        if (!config_path.empty()) cfg = monop::analysis::config_from_json(read_file(config_path));
        if (!name.empty()) {
            cfg.spec = monop::analysis::SpecInput{};
            cfg.spec.name = name;
        }
        if (!n_list.empty()) cfg.oracle.n_list = split_int_list(n_list);
        if (!mode.empty()) {
            if (mode == "exact") cfg.oracle.mode = monop::oracle::ArithmeticMode::ExactRational;
            else if (mode == "float")
                cfg.oracle.mode = monop::oracle::ArithmeticMode::HighPrecisionFloat;
            else throw monop::SpecError("--mode must be exact or float");
        }
        if (threads > 0) cfg.threads = threads;
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_positional) {
    if (with_positional)
        cmd->add_option("name", flags.name, "built-in catalog entry name");
    cmd->add_option("--config", flags.config_path, "JSON config (spec + thresholds + grids)");
    cmd->add_option("--json", flags.json_path, "write the JSON result to this path");
    cmd->add_option("--N", flags.n_list, "comma-separated truncation sizes for the oracle");
    cmd->add_option("--mode", flags.mode, "oracle arithmetic: exact|float");
    cmd->add_option("--threads", flags.threads, "worker threads for catalog runs");
}

int exit_code_for(monop::Verdict v) {
    return v == monop::Verdict::Inconclusive ? kExitInconclusive : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monomial operator boundedness/compactness analyzer"};
    app.require_subcommand(1);

    CommonFlags analyze_flags, catalog_flags, oracle_flags, windows_flags;
    std::string only_csv, emit_windows_dir, windows_out;

    CLI::App* analyze = app.add_subcommand("analyze", "classify one operator spec");
    add_common(analyze, analyze_flags, true);
    analyze->add_option("--emit-windows", emit_windows_dir, "also write the window-profile CSV here");

    CLI::App* catalog_cmd = app.add_subcommand("catalog", "run the built-in catalog regression");
    add_common(catalog_cmd, catalog_flags, false);
    catalog_cmd->add_option("--only", only_csv, "comma-separated subset of entries");
    catalog_cmd->add_option("--emit-windows", emit_windows_dir, "write per-entry window CSVs here");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "Galerkin truncation series for one spec");
    add_common(oracle_cmd, oracle_flags, true);

    CLI::App* windows_cmd = app.add_subcommand("windows", "emit the window-profile CSV");
    add_common(windows_cmd, windows_flags, true);
    windows_cmd->add_option("--out", windows_out, "output CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            AnalysisConfig cfg = analyze_flags.load();
            auto report = monop::analysis::run_analyze(cfg);
            std::string body = monop::analysis::report_to_json(report);
            if (!analyze_flags.json_path.empty()) write_file(analyze_flags.json_path, body);
            std::cout << body;
            if (!emit_windows_dir.empty()) {
                std::filesystem::create_directories(emit_windows_dir);
                write_file(emit_windows_dir + "/" + report.name + "_windows.csv",
                           monop::analysis::windows_csv(cfg));
            }
            return exit_code_for(report.verdict);
        }
        if (*catalog_cmd) {
            monop::analysis::CatalogOptions opt;
            opt.base = catalog_flags.load();
            opt.only = split_list(only_csv);
            if (!emit_windows_dir.empty()) {
                std::filesystem::create_directories(emit_windows_dir);
                opt.emit_windows_dir = emit_windows_dir;
            }
            auto rows = monop::analysis::run_catalog(opt);
            std::cout << monop::analysis::catalog_table(rows);
            if (!catalog_flags.json_path.empty())
                write_file(catalog_flags.json_path, monop::analysis::catalog_to_json(rows));
            for (const auto& r : rows)
                if (!r.match) return kExitInconclusive;
            return kExitOk;
        }
        if (*oracle_cmd) {
            AnalysisConfig cfg = oracle_flags.load();
            auto result = monop::analysis::run_oracle(cfg);
            std::string body = monop::analysis::oracle_to_json(result);
            if (!oracle_flags.json_path.empty()) write_file(oracle_flags.json_path, body);
            std::cout << body;
            return kExitOk;
        }
        if (*windows_cmd) {
            AnalysisConfig cfg = windows_flags.load();
            std::string csv = monop::analysis::windows_csv(cfg);
            if (!windows_out.empty()) write_file(windows_out, csv);
            else std::cout << csv;
            return kExitOk;
        }
    } catch (const monop::ParseError& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const monop::PoleError& e) {
        std::cerr << "pole error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const monop::SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
