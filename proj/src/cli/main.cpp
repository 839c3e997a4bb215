#include "cli_internal.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace frog::cli {

namespace {

struct Flags {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out;
    std::string summary;
    int jobs = 0;
};

std::string read_file(const std::string& path, const std::string& key) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(io_error, "io", key, "cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& text, const std::string& key) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !(out.flush()))
        throw CliError(io_error, "io", key, "cannot write " + path.string());
}

std::pair<std::string, std::string> split_set(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw CliError(config_error, "usage", "--set", "expected key=value, got '" + s + "'");
    return {s.substr(0, eq), s.substr(eq + 1)};
}

// "--p2 0.6" or "--p2=0.6" names the unique setting of the subcommand ending in ".p2".
std::vector<std::pair<std::string, std::string>> shorthand(const std::string& command,
                                                           const std::vector<std::string>& extras) {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t k = 0; k < extras.size(); ++k) {
        std::string name = extras[k];
        if (name.rfind("--", 0) != 0)
            throw CliError(config_error, "usage", "-", "unexpected argument '" + name + "'");
        name = name.substr(2);
        std::string value;
        if (const auto eq = name.find('='); eq != std::string::npos) {
            value = name.substr(eq + 1);
            name = name.substr(0, eq);
        } else if (k + 1 < extras.size()) {
            value = extras[++k];
        } else {
            throw CliError(config_error, "usage", name, "option --" + name + " needs a value");
        }
        std::string key;
        if (name.find('.') != std::string::npos) {
            key = name;
        } else {
            for (const auto& candidate : keys_for(command)) {
                if (candidate.size() <= name.size() + 1 || candidate.compare(candidate.size() - name.size(), name.size(), name) != 0 ||
                    candidate[candidate.size() - name.size() - 1] != '.')
                    continue;
                if (!key.empty())
                    throw CliError(config_error, "usage", name, "--" + name + " is ambiguous; use --set section." + name);
                key = candidate;
            }
            if (key.empty()) throw CliError(config_error, "usage", name, "unknown option --" + name);
        }
        out.emplace_back(key, value);
    }
    return out;
}

int execute(const std::string& command, const Flags& flags, const std::vector<std::string>& extras, std::ostream& out) {
    const std::string text = flags.config_path.empty() ? std::string() : read_file(flags.config_path, "--config");
    std::vector<std::pair<std::string, std::string>> sets;
    for (const auto& s : flags.sets) sets.push_back(split_set(s));
    for (auto& p : shorthand(command, extras)) sets.push_back(std::move(p));
    const ExperimentConfig config = parse_config(command, text, sets);
    const RunOutput result = run_experiment(config, flags.jobs);

    const char* dir = std::getenv("FROGSIM_OUT_DIR");
    std::filesystem::path out_path = flags.out;
    std::filesystem::path summary_path = flags.summary;
    if (dir && *dir) {
        if (out_path.empty()) out_path = std::filesystem::path(dir) / (command + ".csv");
        if (summary_path.empty()) summary_path = std::filesystem::path(dir) / (command + ".json");
    }
    if (out_path.empty() || out_path == "-") {
        out << result.text;
    } else {
        write_file(out_path, result.text, "--out");
    }
    if (!summary_path.empty()) write_file(summary_path, result.summary.dump(2) + "\n", "--summary");
    return ok;
}

} // namespace

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Frog model simulations and diagnostics"};
    app.require_subcommand(1);
    Flags flags;
    std::vector<std::pair<std::string, CLI::App*>> subs;
    for (const auto& name : commands()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", flags.config_path, "key = value settings file");
        sub->add_option("--set", flags.sets, "override one setting, key=value")->take_all();
        sub->add_option("--out", flags.out, "CSV output file ('-' for stdout)");
        sub->add_option("--summary", flags.summary, "JSON summary file");
        sub->add_option("--jobs", flags.jobs, "worker threads (0 = all)")->check(CLI::NonNegativeNumber);
        sub->allow_extras();
        std::string keys = "Settings (defaults):\n";
        for (const auto& [k, v] : key_defaults(name)) keys += "  " + k + " = " + v + "\n";
        sub->footer(keys);
        subs.emplace_back(name, sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << CliError(config_error, "usage", "-", e.what()).line() << "\n";
        return config_error;
    }
    try {
        for (const auto& [name, sub] : subs)
            if (sub->parsed()) return execute(name, flags, sub->remaining(), out);
        throw CliError(config_error, "usage", "-", "no subcommand");
    } catch (const CliError& e) {
        err << e.line() << "\n";
        return e.code();
    } catch (const std::exception& e) {
        err << CliError(domain_error, "internal", "-", e.what()).line() << "\n";
        return domain_error;
    }
}

} // namespace frog::cli
