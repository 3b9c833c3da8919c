#include "speclab/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "speclab/grid.hpp"

namespace speclab {

namespace {

constexpr char kernel_magic[4] = {'S', 'K', 'M', '1'};

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
    std::ofstream out(path, mode);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

// Quote only when the cell would break the row structure.
std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char ch : cell) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

template <class T>
void put(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
void take(std::ifstream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof v);
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_table_csv(const std::string& path, const Table& t) {
    std::ofstream out = open_out(path, std::ios::binary);
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << csv_escape(t.columns[i]);
    out << "\n";
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size())
            throw std::runtime_error("table row width mismatch in " + path);
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_escape(row[i]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_plot_csv(const std::string& path, const std::vector<PlotSeries>& data) {
    std::ofstream out = open_out(path, std::ios::binary);
    out << "series,x,y\n";
    for (const auto& s : data) {
        if (s.x.size() != s.y.size())
            throw std::runtime_error("plot series length mismatch: " + s.series);
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << csv_escape(s.series) << "," << format_double(s.x[i]) << ","
                << format_double(s.y[i]) << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_kernel_csv(const std::string& path, const KernelMatrix& k) {
    std::ofstream out = open_out(path, std::ios::binary);
    out << "x,y,value\n";
    const auto n = Eigen::Index(k.grid.n_points);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out << format_double(k.grid.node(std::size_t(i))) << ","
                << format_double(k.grid.node(std::size_t(j))) << ","
                << format_double(k.values(i, j)) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_kernel_binary(const std::string& path, const KernelMatrix& k) {
    std::ofstream out = open_out(path, std::ios::binary);
    out.write(kernel_magic, sizeof kernel_magic);
    put(out, std::uint32_t(k.grid.n_points));
    put(out, std::int32_t(k.derivative_order));
    put(out, k.grid.x_min);
    put(out, k.grid.x_max);
    put(out, std::uint8_t(k.grid.boundary == Boundary::periodic ? 1 : 0));
    put(out, std::uint32_t(k.label.size()));
    out.write(k.label.data(), std::streamsize(k.label.size()));
    for (Eigen::Index i = 0; i < k.values.rows(); ++i)
        for (Eigen::Index j = 0; j < k.values.cols(); ++j)
            put(out, k.values(i, j));
    if (!out) throw std::runtime_error("write failed: " + path);
}

KernelMatrix read_kernel_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open kernel dump: " + path);
    char magic[4];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kernel_magic, sizeof magic) != 0)
        throw std::runtime_error("not a kernel dump: " + path);
    std::uint32_t n = 0, label_len = 0;
    std::int32_t order = 0;
    double x_min = 0.0, x_max = 0.0;
    std::uint8_t boundary = 0;
    take(in, n);
    take(in, order);
    take(in, x_min);
    take(in, x_max);
    take(in, boundary);
    take(in, label_len);
    if (!in || n == 0 || label_len > (1u << 20))
        throw std::runtime_error("corrupt kernel dump header: " + path);
    KernelMatrix k;
    k.label.resize(label_len);
    in.read(k.label.data(), std::streamsize(label_len));
    k.grid = build_grid(x_min, x_max, n,
                        boundary ? Boundary::periodic : Boundary::dirichlet);
    k.derivative_order = int(order);
    k.values.resize(Eigen::Index(n), Eigen::Index(n));
    for (Eigen::Index i = 0; i < k.values.rows(); ++i)
        for (Eigen::Index j = 0; j < k.values.cols(); ++j)
            take(in, k.values(i, j));
    if (!in) throw std::runtime_error("kernel dump truncated: " + path);
    return k;
}

Table decay_report_table(const DecayReport& rep) {
    Table t;
    t.columns = {"family", "alpha", "N", "j", "S", "ok", "error"};
    for (std::size_t ni = 0; ni < rep.n_values.size(); ++ni)
        for (const auto& cell : rep.cells[ni])
            t.rows.push_back({to_string(rep.kind), std::to_string(rep.alpha),
                              format_double(rep.n_values[ni]),
                              std::to_string(cell.j), format_double(cell.S),
                              cell.ok ? "1" : "0", cell.error});
    return t;
}

std::vector<PlotSeries> decay_report_plot(const DecayReport& rep) {
    std::vector<PlotSeries> out;
    for (std::size_t ni = 0; ni < rep.n_values.size(); ++ni) {
        PlotSeries s;
        s.series = "alpha" + std::to_string(rep.alpha) + "_N" +
                   format_double(rep.n_values[ni]);
        for (const auto& cell : rep.cells[ni]) {
            if (!cell.ok) continue;
            s.x.push_back(double(cell.j));
            s.y.push_back(cell.S);
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string decay_report_json(const DecayReport& rep) {
    nlohmann::ordered_json root;
    root["family"] = to_string(rep.kind);
    root["alpha"] = rep.alpha;
    root["rows"] = nlohmann::ordered_json::array();
    for (std::size_t ni = 0; ni < rep.n_values.size(); ++ni) {
        nlohmann::ordered_json row;
        row["N"] = rep.n_values[ni];
        row["trend"] = to_string(rep.trend[ni]);
        row["growth_rate"] = rep.growth_rate[ni];
        row["cells"] = nlohmann::ordered_json::array();
        for (const auto& cell : rep.cells[ni]) {
            nlohmann::ordered_json c;
            c["j"] = cell.j;
            c["S"] = cell.S;
            c["ok"] = cell.ok;
            if (!cell.error.empty()) c["error"] = cell.error;
            row["cells"].push_back(std::move(c));
        }
        root["rows"].push_back(std::move(row));
    }
    return root.dump(2) + "\n";
}

} // namespace speclab
