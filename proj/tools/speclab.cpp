// speclab — command-line front end for the spectral-calculus lab.
// Subcommands: run (execute a suite config), list (enumerate bundled suites).
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "speclab/runner.hpp"

namespace fs = std::filesystem;

namespace {

fs::path default_suites_dir(const char* argv0) {
    std::error_code ec;
    fs::path exe = fs::read_symlink("/proc/self/exe", ec);
    if (ec) exe = fs::absolute(argv0 ? argv0 : ".");
    return exe.parent_path() / "suites";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral multiplier laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed_override;
    bool verbose = false;
    std::string suites_dir = default_suites_dir(argc > 0 ? argv[0] : nullptr).string();

    CLI::App* run = app.add_subcommand("run", "run a suite config and write reports");
    run->add_option("--config", config_path, "suite config JSON")->required();
    run->add_option("--out", out_dir, "output directory (default: config's output_dir)");
    run->add_option("--seed-override", seed_override, "override the Monte Carlo seed");
    run->add_flag("--verbose", verbose, "print per-check progress");

    CLI::App* list = app.add_subcommand("list", "list bundled suites");
    list->add_flag("--verbose", verbose, "include long descriptions");
    list->add_option("--suites-dir", suites_dir, "directory with suite configs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return speclab::run_suite_file(config_path, out_dir, seed_override, verbose,
                                           std::cout);
        }
        for (const auto& s : speclab::list_suites(suites_dir)) {
            std::cout << s.name << " — " << s.description << "\n";
            if (verbose && !s.details.empty()) std::cout << "    " << s.details << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
