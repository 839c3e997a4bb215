#include "cli_internal.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "frog/conductance.hpp"
#include "frog/counts_law.hpp"
#include "frog/errors.hpp"
#include "frog/kernel.hpp"
#include "frog/series.hpp"

namespace frog::cli {

namespace {

enum class Type { integer, real, choice, int_list, step_law, path };

struct KeySpec {
    const char* key;
    Type type;
    const char* fallback;
    std::vector<std::string> commands;
    std::vector<std::string> choices = {};
};

const std::vector<KeySpec>& key_table() {
    static const std::vector<std::string> lattice = {"simulate", "coverage", "drift-check"};
    static const std::vector<std::string> runs = {"simulate", "coverage"};
    static const std::vector<KeySpec> table = {
        {"run.seed", Type::integer, "1", {"simulate", "coverage", "series", "drift-check"}},
        {"run.replicas", Type::integer, "20", runs},
        {"run.mode", Type::choice, "activate", {"simulate"}, {"activate", "all-awake"}},
        {"run.horizon", Type::integer, "0", {"simulate"}},
        {"run.horizon_factor", Type::integer, "8", {"simulate"}},
        {"run.max_radius", Type::integer, "0", {"simulate"}},

        {"model.kernel", Type::choice, "elliptic", lattice, {"elliptic", "comb", "outward", "conductance"}},
        {"model.d", Type::integer, "2", lattice},
        {"model.eps", Type::real, "0.125", lattice},
        {"model.residual", Type::step_law, "+e1:1", lattice},
        {"model.p1", Type::real, "0.5", lattice},
        {"model.p2", Type::real, "0.25", lattice},
        {"model.bias", Type::real, "0.8", lattice},
        {"model.conductance", Type::choice, "bernoulli", lattice, {"bernoulli", "uniform"}},
        {"model.p", Type::real, "1", lattice},
        {"model.lo", Type::real, "1", lattice},
        {"model.hi", Type::real, "1", lattice},
        {"model.box", Type::integer, "0", lattice},

        {"counts.law", Type::choice, "constant", runs, {"constant", "bernoulli", "logtail", "logmoment", "comb"}},
        {"counts.m", Type::integer, "1", runs},
        {"counts.p", Type::real, "0.5", runs},
        {"counts.c0", Type::real, "40", runs},
        {"counts.d", Type::integer, "2", runs},
        {"counts.t0", Type::integer, "3", runs},
        {"counts.theta", Type::real, "1", runs},
        {"counts.cap", Type::integer, "4096", runs},

        {"window.L", Type::int_list, "16,32,64", runs},
        {"window.shape", Type::choice, "ball", runs, {"ball", "cube"}},
        {"window.tooth", Type::integer, "0", runs},

        {"coverage.radii", Type::int_list, "0,1,2,4", {"coverage"}},
        {"coverage.horizon_cap", Type::integer, "4096", {"coverage"}},

        {"dx.graph", Type::path, "", {"dx"}},
        {"dx.m_max", Type::integer, "6", {"dx"}},
        {"dx.site", Type::integer, "-1", {"dx"}},

        {"series.a", Type::real, "0.5", {"series"}},
        {"series.c", Type::real, "1", {"series"}},
        {"series.d", Type::integer, "1", {"series"}},
        {"series.y", Type::choice, "constant", {"series"}, {"zero", "constant", "logtail", "lognormal"}},
        {"series.value", Type::real, "1", {"series"}},
        {"series.theta", Type::real, "1", {"series"}},
        {"series.mu", Type::real, "0", {"series"}},
        {"series.sigma", Type::real, "1", {"series"}},
        {"series.bound", Type::real, "1000000", {"series"}},
        {"series.n_max", Type::integer, "100000", {"series"}},

        {"drift.delta", Type::real, "0.6", {"drift-check"}},
        {"drift.radius", Type::integer, "20", {"drift-check"}},

        {"factor.p2", Type::real, "0.25", {"factor"}},
        {"factor.height", Type::integer, "0", {"factor"}},

        {"raabe.eps", Type::real, "0.125", {"raabe"}},
        {"raabe.d", Type::integer, "2", {"raabe"}},
        {"raabe.c_so", Type::real, "40", {"raabe"}},
        {"raabe.r_min", Type::real, "1", {"raabe"}},
        {"raabe.r_max", Type::real, "1000000", {"raabe"}},
        {"raabe.factor", Type::real, "2", {"raabe"}},
        {"raabe.r_sphere", Type::integer, "12", {"raabe"}},
    };
    return table;
}

const KeySpec* find_key(const std::string& key) {
    for (const auto& spec : key_table())
        if (key == spec.key) return &spec;
    return nullptr;
}

bool uses(const KeySpec& spec, const std::string& command) {
    return std::find(spec.commands.begin(), spec.commands.end(), command) != spec.commands.end();
}

[[noreturn]] void bad(const std::string& key, const std::string& message) {
    throw CliError(config_error, "config", key, message);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& key, const std::string& text) {
    long long v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) bad(key, "expected an integer, got '" + text + "'");
    return v;
}

double parse_real(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) bad(key, "expected a finite number, got '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, sep)) out.push_back(trim(part));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
    return out;
}

// "+e1", "-e2" or comma-separated coordinates.
std::string canonical_offset(const std::string& key, const std::string& text) {
    if (text.size() >= 3 && (text[0] == '+' || text[0] == '-') && text[1] == 'e') {
        const long long axis = parse_int(key, text.substr(2));
        if (axis < 1 || axis > kMaxDim) bad(key, "unit vector index out of range in '" + text + "'");
        return text.substr(0, 2) + std::to_string(axis);
    }
    std::vector<std::string> coords;
    for (const auto& c : split(text, ',')) coords.push_back(std::to_string(parse_int(key, c)));
    if (coords.empty() || coords.size() > static_cast<std::size_t>(kMaxDim)) bad(key, "bad offset '" + text + "'");
    return join(coords, ",");
}

std::string canonical(const KeySpec& spec, const std::string& text) {
    const std::string key = spec.key;
    switch (spec.type) {
    case Type::integer: return std::to_string(parse_int(key, text));
    case Type::real: return format_real_short(parse_real(key, text));
    case Type::choice:
        if (std::find(spec.choices.begin(), spec.choices.end(), text) == spec.choices.end())
            bad(key, "expected one of " + join(spec.choices, "|") + ", got '" + text + "'");
        return text;
    case Type::int_list: {
        std::vector<std::string> out;
        for (const auto& p : split(text, ',')) out.push_back(std::to_string(parse_int(key, p)));
        if (out.empty()) bad(key, "expected a comma-separated list of integers");
        return join(out, ",");
    }
    case Type::step_law: {
        std::vector<std::string> out;
        for (const auto& entry : split(text, ';')) {
            const auto colon = entry.find(':');
            if (colon == std::string::npos) bad(key, "step '" + entry + "' needs the form offset:probability");
            out.push_back(canonical_offset(key, trim(entry.substr(0, colon))) + ":" +
                          format_real_short(parse_real(key, trim(entry.substr(colon + 1)))));
        }
        if (out.empty()) bad(key, "empty step law");
        return join(out, ";");
    }
    case Type::path: return text;
    }
    return text;
}

template <class F>
void check(const std::string& key, F&& f) {
    try {
        f();
    } catch (const ParameterError& e) {
        bad(key, e.what());
    } catch (const PreconditionError& e) {
        bad(key, e.what());
    }
}

void require(bool ok, const std::string& key, const std::string& message) {
    if (!ok) bad(key, message);
}

void validate(const ExperimentConfig& c) {
    const auto& cmd = c.command;
    if (cmd == "simulate" || cmd == "coverage" || cmd == "drift-check") {
        const auto kind = c.raw("model.kernel");
        check("model." + kind, [&] { (void)build_kernel(c, nullptr); });
        if (kind == "conductance") check("model.conductance", [&] { (void)build_conductance_law(c); });
        require(c.integer("model.box") >= 0, "model.box", "box radius must be nonnegative (0 = automatic)");
    }
    if (cmd == "simulate" || cmd == "coverage") {
        require(c.integer("run.replicas") >= 1, "run.replicas", "at least one replica is required");
        require(c.integer("counts.cap") >= 0, "counts.cap", "frog cap must be nonnegative (0 = uncapped)");
        require(c.integer("window.tooth") >= 0, "window.tooth", "tooth height must be nonnegative");
        check("counts.law", [&] { (void)build_counts_law(c); });
        const auto L = c.integers("window.L");
        for (std::size_t k = 0; k < L.size(); ++k)
            require(L[k] >= 0 && (k == 0 || L[k] > L[k - 1]), "window.L", "box sizes must be nonnegative and increasing");
        const auto kind = c.raw("model.kernel");
        const bool comb_law = c.raw("counts.law") == "comb";
        require(!comb_law || kind == "comb", "counts.law", "comb counts need the comb kernel");
    }
    if (cmd == "simulate") {
        require(c.integer("run.horizon") >= 0, "run.horizon", "horizon must be nonnegative (0 = factor * L)");
        require(c.integer("run.horizon_factor") >= 1, "run.horizon_factor", "horizon factor must be positive");
        require(c.integer("run.max_radius") >= 0, "run.max_radius", "max radius must be nonnegative (0 = unlimited)");
        const auto box = c.integer("model.box");
        require(box == 0 || c.raw("model.kernel") != "conductance" || box >= c.integers("window.L").back(), "model.box",
                "conductance box must contain the window");
    }
    if (cmd == "coverage") {
        require(c.raw("model.kernel") == "elliptic", "model.kernel", "coverage needs the elliptic drift kernel");
        require(c.integer("coverage.horizon_cap") >= 1, "coverage.horizon_cap", "horizon cap must be positive");
        const auto r = c.integers("coverage.radii");
        for (std::size_t k = 0; k < r.size(); ++k)
            require(r[k] >= 0 && (k == 0 || r[k] > r[k - 1]), "coverage.radii", "radii must be nonnegative and increasing");
    }
    if (cmd == "dx") {
        require(!c.raw("dx.graph").empty(), "dx.graph", "a marked-graph file is required");
        require(c.integer("dx.m_max") >= 0, "dx.m_max", "m_max must be nonnegative");
        require(c.integer("dx.site") >= -1, "dx.site", "site must be a site id or -1 for all");
    }
    if (cmd == "series") {
        require(c.real("series.a") > 0.0 && c.real("series.a") < 1.0, "series.a", "a must lie in (0, 1)");
        require(c.real("series.c") > 0.0, "series.c", "c must be positive");
        require(c.integer("series.d") >= 1 && c.integer("series.d") <= kMaxDim, "series.d", "d must lie in 1..3");
        require(c.integer("series.n_max") >= 1, "series.n_max", "n_max must be positive");
        check("series.y", [&] { (void)build_y_law(c); });
    }
    if (cmd == "drift-check") {
        require(c.integer("drift.radius") >= 0, "drift.radius", "radius must be nonnegative");
        require(std::isfinite(c.real("drift.delta")), "drift.delta", "delta must be finite");
    }
    if (cmd == "factor") {
        const double p2 = c.real("factor.p2");
        require(p2 > 0.0 && p2 < 1.0, "factor.p2", "p2 must lie in (0, 1)");
        require(c.integer("factor.height") >= 0, "factor.height", "height must be nonnegative (0 = automatic)");
    }
    if (cmd == "raabe") {
        const double eps = c.real("raabe.eps");
        require(eps > 0.0 && eps < 1.0, "raabe.eps", "eps must lie in (0, 1)");
        require(c.integer("raabe.d") >= 1 && c.integer("raabe.d") <= kMaxDim, "raabe.d", "d must lie in 1..3");
        require(c.real("raabe.c_so") > 0.0, "raabe.c_so", "c_so must be positive");
        require(c.real("raabe.r_min") >= 1.0, "raabe.r_min", "r_min must be at least 1");
        require(c.real("raabe.r_max") >= c.real("raabe.r_min"), "raabe.r_max", "r_max must be at least r_min");
        require(c.real("raabe.factor") > 1.0, "raabe.factor", "grid factor must exceed 1");
        require(c.integer("raabe.r_sphere") >= 1, "raabe.r_sphere", "r_sphere must be positive");
    }
}

std::vector<std::pair<std::string, std::string>> parse_lines(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line, section;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') bad("-", "line " + std::to_string(number) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) bad("-", "line " + std::to_string(number) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (!section.empty()) key = section + "." + key;
        out.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return out;
}

} // namespace

std::string format_real_short(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string CliError::line() const {
    std::string msg;
    for (char ch : std::string(what())) {
        if (ch == '"' || ch == '\\') msg += '\\';
        msg += (ch == '\n') ? ' ' : ch;
    }
    return "error kind=" + kind_ + " key=" + (key_.empty() ? "-" : key_) + " message=\"" + msg + "\"";
}

const std::string& ExperimentConfig::raw(const std::string& key) const {
    const auto it = values.find(key);
    if (it == values.end()) throw CliError(config_error, "config", key, "setting is not used by " + command);
    return it->second;
}

long long ExperimentConfig::integer(const std::string& key) const { return parse_int(key, raw(key)); }
double ExperimentConfig::real(const std::string& key) const { return parse_real(key, raw(key)); }

std::vector<long long> ExperimentConfig::integers(const std::string& key) const {
    std::vector<long long> out;
    for (const auto& p : split(raw(key), ',')) out.push_back(parse_int(key, p));
    return out;
}

const std::vector<std::string>& commands() {
    static const std::vector<std::string> list = {"simulate", "coverage", "dx", "series", "drift-check", "factor", "raabe"};
    return list;
}

std::vector<std::string> keys_for(const std::string& command) {
    std::vector<std::string> out;
    for (const auto& spec : key_table())
        if (uses(spec, command)) out.push_back(spec.key);
    return out;
}

std::vector<std::pair<std::string, std::string>> key_defaults(const std::string& command) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& spec : key_table())
        if (uses(spec, command)) out.emplace_back(spec.key, canonical(spec, spec.fallback));
    std::sort(out.begin(), out.end());
    return out;
}

ExperimentConfig parse_config(const std::string& command, const std::string& text,
                              const std::vector<std::pair<std::string, std::string>>& sets) {
    const auto& all = commands();
    if (std::find(all.begin(), all.end(), command) == all.end())
        throw CliError(config_error, "usage", "-", "unknown subcommand '" + command + "'");
    ExperimentConfig config;
    config.command = command;
    for (const auto& spec : key_table())
        if (uses(spec, command)) config.values[spec.key] = canonical(spec, spec.fallback);

    auto assign = [&](const std::string& key, const std::string& value) {
        const KeySpec* spec = find_key(key);
        if (!spec) bad(key, "unknown setting");
        if (!uses(*spec, command)) bad(key, "setting is not used by " + command);
        config.values[key] = canonical(*spec, trim(value));
    };
    for (const auto& [k, v] : parse_lines(text)) assign(k, v);
    for (const auto& [k, v] : sets) assign(trim(k), v);
    validate(config);
    return config;
}

ExperimentConfig parse_output_header(const std::string& text) {
    std::istringstream in(text);
    std::string line, command, body;
    while (std::getline(in, line)) {
        if (line.rfind("# command: ", 0) == 0) command = trim(line.substr(11));
        else if (line.rfind("# config: ", 0) == 0) body += line.substr(10) + "\n";
        else if (line.empty() || line[0] != '#') break;
    }
    if (command.empty()) bad("-", "output has no '# command:' header line");
    return parse_config(command, body);
}

} // namespace frog::cli
