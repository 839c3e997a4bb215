#pragma once

#include <memory>
#include <string>
#include <vector>

#include "frog/cli.hpp"
#include "frog/conductance.hpp"
#include "frog/counts_law.hpp"
#include "frog/kernel.hpp"
#include "frog/series.hpp"

namespace frog::cli {

/// Shortest decimal that reads back to the same double.
std::string format_real_short(double v);
/// %.17g
std::string format_real(double v);

std::vector<std::string> keys_for(const std::string& command);
/// (key, canonical default) pairs in key order.
std::vector<std::pair<std::string, std::string>> key_defaults(const std::string& command);

/// The model.* kernel. For model.kernel = conductance `env` supplies the
/// environment; a null env only validates the settings and returns null.
std::shared_ptr<const Kernel> build_kernel(const ExperimentConfig& c, std::shared_ptr<const EnvSample> env);
ConductanceLaw build_conductance_law(const ExperimentConfig& c);
CountsLaw build_counts_law(const ExperimentConfig& c);
YLaw build_y_law(const ExperimentConfig& c);

} // namespace frog::cli
