#include "speclab/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "speclab/errors.hpp"

namespace speclab {

using ojson = nlohmann::ordered_json;

namespace {

// nlohmann reports byte offsets; configs are small, so recover line/column.
std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw config_error("config." + path + ": " + what);
}

const ojson& member(const ojson& o, const std::string& path, const char* key) {
    const auto it = o.find(key);
    if (it == o.end()) fail(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

void expect_keys(const ojson& o, const std::string& path,
                 std::initializer_list<const char*> allowed) {
    if (!o.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : o.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known) fail(path.empty() ? key : path + "." + key, "unknown field");
    }
}

std::string get_string(const ojson& o, const std::string& path, const char* key) {
    const ojson& v = member(o, path, key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

double get_double(const ojson& o, const std::string& path, const char* key) {
    const ojson& v = member(o, path, key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

std::int64_t get_int(const ojson& o, const std::string& path, const char* key) {
    const ojson& v = member(o, path, key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<std::int64_t>();
}

std::uint64_t get_uint(const ojson& o, const std::string& path, const char* key) {
    const ojson& v = member(o, path, key);
    if (!v.is_number_unsigned()) fail(path + "." + key, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

PotentialSpec parse_potential(const ojson& o) {
    expect_keys(o, "potential", {"kind", "nu", "level"});
    const PotentialKind kind = [&] {
        try {
            return potential_kind_from_string(get_string(o, "potential", "kind"));
        } catch (const std::invalid_argument& e) {
            fail("potential.kind", e.what());
        }
    }();
    switch (kind) {
        case PotentialKind::free_particle:
            return PotentialSpec::free_particle_spec();
        case PotentialKind::poschl_teller: {
            const std::int64_t nu = get_int(o, "potential", "nu");
            if (nu < 1 || nu > 64) fail("potential.nu", "depth must be in [1, 64]");
            return PotentialSpec::poschl_teller_spec(int(nu));
        }
        case PotentialKind::constant:
            return PotentialSpec::constant_spec(get_double(o, "potential", "level"));
        case PotentialKind::table:
            fail("potential.kind", "table potentials are grid-bound and cannot "
                                   "appear in a config");
    }
    fail("potential.kind", "unhandled kind");
}

ojson potential_json(const PotentialSpec& p) {
    ojson o;
    o["kind"] = to_string(p.kind);
    if (p.kind == PotentialKind::poschl_teller) o["nu"] = p.nu;
    if (p.kind == PotentialKind::constant) o["level"] = p.c;
    return o;
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    ojson root;
    try {
        root = ojson::parse(json_text);
    } catch (const ojson::parse_error& e) {
        const auto [line, col] = line_col(json_text, e.byte > 0 ? e.byte - 1 : 0);
        throw config_error("config parse error at line " + std::to_string(line) +
                           ", column " + std::to_string(col) + ": " + e.what());
    }
    expect_keys(root, "",
                {"name", "description", "details", "potential", "grid", "family",
                 "alpha", "weight_orders", "times", "quadrature", "monte_carlo",
                 "output_dir", "checks"});

    ExperimentConfig c;
    c.name = get_string(root, "", "name");
    c.description = root.contains("description") ? get_string(root, "", "description") : "";
    c.details = root.contains("details") ? get_string(root, "", "details") : "";
    c.potential = parse_potential(member(root, "", "potential"));

    {
        const ojson& g = member(root, "", "grid");
        expect_keys(g, "grid", {"x_min", "x_max", "n_points", "boundary"});
        c.grid.x_min = get_double(g, "grid", "x_min");
        c.grid.x_max = get_double(g, "grid", "x_max");
        if (!(c.grid.x_min < c.grid.x_max)) fail("grid", "x_min must be below x_max");
        const std::uint64_t n = get_uint(g, "grid", "n_points");
        if (n < 16 || n > (1u << 16)) fail("grid.n_points", "must be in [16, 65536]");
        c.grid.n_points = std::size_t(n);
        try {
            c.grid.boundary = boundary_from_string(get_string(g, "grid", "boundary"));
        } catch (const std::invalid_argument& e) {
            fail("grid.boundary", e.what());
        }
    }
    {
        const ojson& f = member(root, "", "family");
        expect_keys(f, "family", {"kind", "j_min", "j_max"});
        try {
            c.family.kind = family_kind_from_string(get_string(f, "family", "kind"));
        } catch (const std::invalid_argument& e) {
            fail("family.kind", e.what());
        }
        c.family.j_min = int(get_int(f, "family", "j_min"));
        c.family.j_max = int(get_int(f, "family", "j_max"));
        if (c.family.j_min > c.family.j_max) fail("family", "j_min must not exceed j_max");
        if (c.family.j_min < -64 || c.family.j_max > 64) fail("family", "j out of range");
    }
    {
        const ojson& a = member(root, "", "alpha");
        if (!a.is_array()) fail("alpha", "expected an array");
        for (const auto& v : a) {
            if (!v.is_number_integer()) fail("alpha", "entries must be integers");
            const std::int64_t x = v.get<std::int64_t>();
            if (x != 0 && x != 1) fail("alpha", "derivative order must be 0 or 1");
            c.alpha.push_back(int(x));
        }
    }
    {
        const ojson& w = member(root, "", "weight_orders");
        if (!w.is_array()) fail("weight_orders", "expected an array");
        for (const auto& v : w) {
            if (!v.is_number()) fail("weight_orders", "entries must be numbers");
            const double x = v.get<double>();
            if (x < 0.0 || x > 16.0) fail("weight_orders", "order must be in [0, 16]");
            c.weight_orders.push_back(x);
        }
    }
    {
        const ojson& t = member(root, "", "times");
        if (!t.is_array()) fail("times", "expected an array");
        for (const auto& v : t) {
            if (!v.is_number()) fail("times", "entries must be numbers");
            const double x = v.get<double>();
            if (!(x > 0.0)) fail("times", "times must be positive");
            c.times.push_back(x);
        }
    }
    {
        const ojson& q = member(root, "", "quadrature");
        expect_keys(q, "quadrature", {"tol", "max_panels"});
        c.quadrature.tol = get_double(q, "quadrature", "tol");
        if (!(c.quadrature.tol > 0.0)) fail("quadrature.tol", "must be positive");
        const std::uint64_t panels = get_uint(q, "quadrature", "max_panels");
        if (panels < 1 || panels > (1u << 24)) fail("quadrature.max_panels", "out of range");
        c.quadrature.max_panels = std::size_t(panels);
    }
    {
        const ojson& m = member(root, "", "monte_carlo");
        expect_keys(m, "monte_carlo", {"paths", "steps", "seed"});
        c.monte_carlo.paths = std::size_t(get_uint(m, "monte_carlo", "paths"));
        c.monte_carlo.steps = std::size_t(get_uint(m, "monte_carlo", "steps"));
        if (c.monte_carlo.paths == 0) fail("monte_carlo.paths", "must be positive");
        if (c.monte_carlo.steps == 0) fail("monte_carlo.steps", "must be positive");
        c.monte_carlo.seed = get_uint(m, "monte_carlo", "seed");
    }
    c.output_dir = get_string(root, "", "output_dir");
    if (root.contains("checks")) {
        const ojson& ch = root["checks"];
        if (!ch.is_array()) fail("checks", "expected an array");
        for (std::size_t i = 0; i < ch.size(); ++i) {
            const std::string path = "checks[" + std::to_string(i) + "]";
            expect_keys(ch[i], path, {"check", "expect"});
            CheckSpec s;
            s.check = get_string(ch[i], path, "check");
            s.expect = get_string(ch[i], path, "expect");
            c.checks.push_back(std::move(s));
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const config_error& e) {
        throw config_error(path + ": " + e.what());
    }
}

std::string serialize_config(const ExperimentConfig& c) {
    ojson root;
    root["name"] = c.name;
    root["description"] = c.description;
    root["details"] = c.details;
    root["potential"] = potential_json(c.potential);
    root["grid"] = {{"x_min", c.grid.x_min},
                    {"x_max", c.grid.x_max},
                    {"n_points", c.grid.n_points},
                    {"boundary", to_string(c.grid.boundary)}};
    root["family"] = {{"kind", to_string(c.family.kind)},
                      {"j_min", c.family.j_min},
                      {"j_max", c.family.j_max}};
    root["alpha"] = c.alpha;
    root["weight_orders"] = c.weight_orders;
    root["times"] = c.times;
    root["quadrature"] = {{"tol", c.quadrature.tol},
                          {"max_panels", c.quadrature.max_panels}};
    root["monte_carlo"] = {{"paths", c.monte_carlo.paths},
                           {"steps", c.monte_carlo.steps},
                           {"seed", c.monte_carlo.seed}};
    root["output_dir"] = c.output_dir;
    root["checks"] = ojson::array();
    for (const auto& s : c.checks)
        root["checks"].push_back({{"check", s.check}, {"expect", s.expect}});
    return root.dump(2) + "\n";
}

} // namespace speclab
