#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace frog::cli {

/// Exit statuses of frogsim.
enum ExitCode : int { ok = 0, config_error = 2, domain_error = 3, window_exhausted = 4, io_error = 5 };

/// A failure that maps to one machine-readable stderr line:
/// error kind=<kind> key=<key> message="<message>"
class CliError : public std::runtime_error {
public:
    CliError(ExitCode code, std::string kind, std::string key, const std::string& message)
        : std::runtime_error(message), code_(code), kind_(std::move(kind)), key_(std::move(key)) {}

    ExitCode code() const { return code_; }
    const std::string& kind() const { return kind_; }
    const std::string& key() const { return key_; }
    std::string line() const;

private:
    ExitCode code_;
    std::string kind_;
    std::string key_;
};

/// Subcommand plus every setting it uses, defaults filled in and values in
/// canonical form, so equal configs print identically.
struct ExperimentConfig {
    std::string command;
    std::map<std::string, std::string> values;

    const std::string& raw(const std::string& key) const;
    long long integer(const std::string& key) const;
    double real(const std::string& key) const;
    std::vector<long long> integers(const std::string& key) const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

const std::vector<std::string>& commands();

/// Defaults for `command`, then `key = value` lines of `text`, then `sets`.
/// Every value is canonicalized and the referenced constructors are
/// validated. Throws CliError with exit code config_error.
ExperimentConfig parse_config(const std::string& command, const std::string& text,
                              const std::vector<std::pair<std::string, std::string>>& sets = {});

/// Rebuilds the config from the "# command:" and "# config:" lines of an output file.
ExperimentConfig parse_output_header(const std::string& text);

struct RunOutput {
    /// Header comments, CSV header and rows.
    std::string text;
    nlohmann::ordered_json summary;
};

/// Runs the subcommand. Output does not depend on `jobs`.
RunOutput run_experiment(const ExperimentConfig& config, int jobs);

/// Full command-line entry point; returns the exit status.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace frog::cli
