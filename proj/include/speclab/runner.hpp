#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "speclab/config.hpp"

namespace speclab {

struct SuiteInfo {
    std::string name;
    std::string description;
    std::string details;
};

// *.json files in suites_dir sorted by filename. A missing directory is an
// empty list; an unreadable file is listed with the problem as its
// description rather than hidden.
std::vector<SuiteInfo> list_suites(const std::string& suites_dir);

struct CheckOutcome {
    std::string name;
    std::string verdict;
    std::string expected;
    bool matched = false;
    std::string details_json; // the check's measured numbers, canonical JSON
};

struct SuiteResult {
    ExperimentConfig config;
    std::vector<CheckOutcome> outcomes;
    bool execution_error = false; // some check threw or was unknown
    int exit_code = 1;            // 0 all matched / 2 verdict mismatch / 1 error
    std::string report_path;
};

// Names the registry knows, sorted.
std::vector<std::string> registered_checks();

// Runs cfg.checks in order, writes report.json plus tables/*.csv and
// plotdata/*.csv under out_dir (cfg.output_dir when out_dir is empty).
// Checks run sequentially so a report is reproducible end to end: identical
// config and seed give a byte-identical report.json except the timestamp.
SuiteResult run_suite(const ExperimentConfig& cfg, const std::string& out_dir,
                      bool verbose, std::ostream& log);

// CLI path: load config, apply overrides, run, print outcome lines. Returns
// the process exit code; setup failures print to log and return 1.
int run_suite_file(const std::string& config_path, const std::string& out_dir,
                   std::optional<std::uint64_t> seed_override, bool verbose,
                   std::ostream& log);

} // namespace speclab
