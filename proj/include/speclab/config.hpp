#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "speclab/cutoffs.hpp"
#include "speclab/grid.hpp"
#include "speclab/potential.hpp"

namespace speclab {

struct GridParams {
    double x_min = -20.0;
    double x_max = 20.0;
    std::size_t n_points = 512;
    Boundary boundary = Boundary::dirichlet;

    friend bool operator==(const GridParams&, const GridParams&) = default;
};

struct FamilyParams {
    FamilyKind kind = FamilyKind::inhomogeneous;
    int j_min = -4;
    int j_max = 4;

    friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

struct QuadratureParams {
    double tol = 1e-6;
    std::size_t max_panels = 8192;

    friend bool operator==(const QuadratureParams&, const QuadratureParams&) = default;
};

struct MonteCarloParams {
    std::size_t paths = 100000;
    std::size_t steps = 200;
    std::uint64_t seed = 1;

    friend bool operator==(const MonteCarloParams&, const MonteCarloParams&) = default;
};

// One named experiment with its expected verdict; the runner compares what
// the experiment reports against `expect` and the suite passes only when
// every row matches.
struct CheckSpec {
    std::string check;
    std::string expect = "holds";

    friend bool operator==(const CheckSpec&, const CheckSpec&) = default;
};

// Everything a suite run depends on. The serialized form is canonical: field
// order is fixed, doubles print in shortest round-trip form, so
// parse(serialize(c)) == c and serialize is idempotent byte-for-byte.
struct ExperimentConfig {
    std::string name;
    std::string description;
    std::string details; // long form, shown by `list --verbose`
    PotentialSpec potential;
    GridParams grid;
    FamilyParams family;
    std::vector<int> alpha;
    std::vector<double> weight_orders;
    std::vector<double> times;
    QuadratureParams quadrature;
    MonteCarloParams monte_carlo;
    std::string output_dir = "out";
    std::vector<CheckSpec> checks;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Throws config_error; parse failures carry line/column diagnostics and
// validation failures name the offending field.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Canonical JSON document (two-space indent, trailing newline).
std::string serialize_config(const ExperimentConfig& c);

} // namespace speclab
