#include "deltachannel/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "deltachannel/errors.hpp"

namespace deltachannel {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

struct Entry {
    std::string value;
    int line;
    bool used = false;
};

struct Section {
    std::string name;
    int line;
    std::map<std::string, Entry> entries;

    bool has(const std::string& key) const { return entries.count(key) != 0; }

    Entry& get(const std::string& key) {
        auto it = entries.find(key);
        if (it == entries.end()) {
            throw ParseError(line, key, "missing required field in [" + name + "]");
        }
        it->second.used = true;
        return it->second;
    }

    double number(const std::string& key) {
        const Entry& e = get(key);
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(e.value.c_str(), &end);
        if (e.value.empty() || *end != '\0' || errno == ERANGE) {
            throw ParseError(e.line, key, "expected a number, got '" + e.value + "'");
        }
        return v;
    }

    double number(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    long integer(const std::string& key, long fallback) {
        if (!has(key)) return fallback;
        const Entry& e = get(key);
        char* end = nullptr;
        const long v = std::strtol(e.value.c_str(), &end, 10);
        if (e.value.empty() || *end != '\0') {
            throw ParseError(e.line, key, "expected an integer, got '" + e.value + "'");
        }
        return v;
    }

    bool flag(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const Entry& e = get(key);
        if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
        if (e.value == "false" || e.value == "no" || e.value == "0") return false;
        throw ParseError(e.line, key, "expected true or false, got '" + e.value + "'");
    }

    void reject_unused() const {
        for (const auto& [key, e] : entries) {
            if (!e.used) throw ParseError(e.line, key, "unknown field in [" + name + "]");
        }
    }
};

std::vector<Section> tokenize(std::string_view text) {
    std::vector<Section> sections;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(line_no, "", "unterminated section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            for (const auto& s : sections) {
                if (s.name == name) throw ParseError(line_no, "", "duplicate section [" + name + "]");
            }
            sections.push_back({name, line_no, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "", "expected 'key = value'");
        if (sections.empty()) throw ParseError(line_no, "", "field outside of any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(line_no, "", "empty field name");
        auto& entries = sections.back().entries;
        if (entries.count(key)) throw ParseError(line_no, key, "duplicate field");
        entries.emplace(key, Entry{value, line_no});
    }
    return sections;
}

std::vector<potentials::Sample> parse_samples(const Entry& e) {
    // x:v pairs separated by commas
    std::vector<potentials::Sample> out;
    std::istringstream in(e.value);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        const auto colon = item.find(':');
        char* end1 = nullptr;
        char* end2 = nullptr;
        const std::string xs = colon == std::string::npos ? "" : trim(item.substr(0, colon));
        const std::string vs = colon == std::string::npos ? "" : trim(item.substr(colon + 1));
        const double x = std::strtod(xs.c_str(), &end1);
        const double v = std::strtod(vs.c_str(), &end2);
        if (xs.empty() || vs.empty() || *end1 != '\0' || *end2 != '\0') {
            throw ParseError(e.line, "samples", "expected 'x:v' pairs, got '" + item + "'");
        }
        out.push_back({x, v});
    }
    return out;
}

PotentialSpec parse_potential(Section& s) {
    Entry& kind_entry = s.get("potential");
    const std::string kind = kind_entry.value;
    if (kind == "constant") return potentials::Constant{s.number("v0")};
    if (kind == "step") {
        return potentials::Step{s.number("v_left"), s.number("v_right"), s.number("x_step", 0.0)};
    }
    if (kind == "linear") {
        return potentials::Linear{s.number("slope"), s.number("v_at_origin", 0.0), s.number("x_lo"),
                                  s.number("x_hi")};
    }
    if (kind == "harmonic") {
        return potentials::Harmonic{s.number("force_const"), s.number("center", 0.0),
                                    s.number("v_min", 0.0)};
    }
    if (kind == "morse") {
        return potentials::Morse{s.number("depth"), s.number("width"), s.number("center", 0.0),
                                 s.number("v_offset", 0.0)};
    }
    if (kind == "exponential") {
        return potentials::Exponential{s.number("amplitude"), s.number("decay"),
                                       s.number("v_offset", 0.0)};
    }
    if (kind == "tabulated") return potentials::Tabulated{parse_samples(s.get("samples"))};
    throw ParseError(kind_entry.line, "potential", "unknown potential kind '" + kind + "'");
}

SolveMode parse_mode(const Entry& e) {
    if (e.value == "exact") return SolveMode::exact;
    if (e.value == "born") return SolveMode::born;
    throw ParseError(e.line, "mode", "expected exact or born, got '" + e.value + "'");
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    auto sections = tokenize(text);
    RunConfig cfg;
    bool have_channel1 = false;
    bool have_sweep = false;

    for (auto& s : sections) {
        if (s.name == "units") {
            cfg.model.units.hbar = s.number("hbar", 1.0);
            cfg.model.units.mass = s.number("mass", 1.0);
        } else if (s.name == "channel1") {
            cfg.model.channel1 = parse_potential(s);
            have_channel1 = true;
        } else if (s.name.rfind("channel.", 0) == 0) {
            const std::string idx = s.name.substr(8);
            char* end = nullptr;
            const long n = std::strtol(idx.c_str(), &end, 10);
            if (idx.empty() || *end != '\0' || n < 2) {
                throw ParseError(s.line, "", "channel sections are [channel.N] with N >= 2");
            }
            CoupledChannel ch{parse_potential(s),
                              CouplingSpec{static_cast<int>(n), s.number("x_cross"), s.number("K0")}};
            cfg.model.coupled.push_back(std::move(ch));
        } else if (s.name == "sweep") {
            have_sweep = true;
            cfg.grid.e_min = s.number("e_min");
            cfg.grid.e_max = s.number("e_max", cfg.grid.e_min);
            cfg.grid.steps = static_cast<int>(s.integer("steps", 1));
            if (s.has("mode")) cfg.mode = parse_mode(s.get("mode"));
            cfg.compare_oracle = s.flag("oracle", false);
            cfg.lenient = s.flag("lenient", false);
            cfg.jobs = static_cast<int>(s.integer("jobs", 1));
            if (s.has("output")) cfg.output_path = s.get("output").value;
        } else if (s.name == "numerics") {
            cfg.model.box.x_min = s.number("x_min", cfg.model.box.x_min);
            cfg.model.box.x_max = s.number("x_max", cfg.model.box.x_max);
            cfg.quad.abs_tol = s.number("abs_tol", cfg.quad.abs_tol);
            cfg.quad.rel_tol = s.number("rel_tol", cfg.quad.rel_tol);
            cfg.quad.pole_tol = s.number("pole_tol", cfg.quad.pole_tol);
            cfg.quad.max_steps = static_cast<std::size_t>(
                s.integer("max_steps", static_cast<long>(cfg.quad.max_steps)));
        } else {
            throw ParseError(s.line, "", "unknown section [" + s.name + "]");
        }
        s.reject_unused();
    }
    if (!have_channel1) throw ParseError(0, "", "missing [channel1] section");
    if (!have_sweep) throw ParseError(0, "", "missing [sweep] section");

    std::sort(cfg.model.coupled.begin(), cfg.model.coupled.end(), [](const auto& a, const auto& b) {
        return a.coupling.channel_index < b.coupling.channel_index;
    });

    std::vector<std::string> problems = validate_grid(cfg.grid);
    if (cfg.jobs < 1) problems.push_back("jobs must be >= 1");
    if (!(cfg.quad.abs_tol > 0.0 && cfg.quad.rel_tol > 0.0)) {
        problems.push_back("integrator tolerances must be positive");
    }
    const ValidationReport report = validate_model(cfg.model);
    problems.insert(problems.end(), report.violations.begin(), report.violations.end());
    if (!problems.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw ValidationError(msg);
    }
    cfg.warnings = report.warnings;
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace deltachannel
