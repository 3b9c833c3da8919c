#pragma once
#include <string>
#include <vector>

#include "speclab/decay.hpp"
#include "speclab/kernel.hpp"

namespace speclab {

// Shortest text that parses back to exactly the same double (to_chars).
std::string format_double(double v);

// Rectangular table for tables/*.csv. Cells are preformatted text; the writer
// only adds RFC-4180 quoting where a cell needs it.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void write_table_csv(const std::string& path, const Table& t);

// Long-format plot data: one (series, x, y) row per point, series contiguous.
struct PlotSeries {
    std::string series;
    std::vector<double> x;
    std::vector<double> y;
};

void write_plot_csv(const std::string& path, const std::vector<PlotSeries>& data);

// Kernel as x,y,value triplets (dense; n^2 rows).
void write_kernel_csv(const std::string& path, const KernelMatrix& k);

// Compact dump for re-analysis: magic/version header, grid bounds and
// boundary, derivative order, label, then row-major doubles. Host byte
// order (these dumps stay on the machine that made them).
void write_kernel_binary(const std::string& path, const KernelMatrix& k);
KernelMatrix read_kernel_binary(const std::string& path);

// Sweep results flattened for plotting and archival.
Table decay_report_table(const DecayReport& rep);
std::vector<PlotSeries> decay_report_plot(const DecayReport& rep);
std::string decay_report_json(const DecayReport& rep); // canonical, nested by N

} // namespace speclab
