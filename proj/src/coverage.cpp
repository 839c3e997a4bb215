#include "frog/coverage.hpp"

#include <cmath>

#include "frog/activation.hpp"
#include "frog/errors.hpp"
#include "frog/kernel.hpp"
#include "frog/parallel.hpp"

namespace frog {

CoverageProfile coverage_profile(const ConfigFactory& factory, double eps, int d, const std::vector<int>& radii,
                                 std::size_t replicas, RngStream rng, Step horizon_cap, int jobs) {
    if (replicas < 1) throw ParameterError("coverage needs at least one replica");
    for (std::size_t k = 0; k < radii.size(); ++k)
        if (radii[k] < 0 || (k && radii[k] <= radii[k - 1]))
            throw ParameterError("coverage radii must be nonnegative and increasing");

    struct Outcome {
        std::vector<char> covered;
        bool truncated = false;
    };
    const Site origin = Site::origin(d);
    auto outcomes = map_indices<Outcome>(replicas, jobs, [&](std::size_t k) {
        const RngStream stream = rng.derive(k);
        const FrogConfig stopped = stop_config(factory(stream), sample_stop_times(eps, d, stream));
        ActivationOptions options;
        options.horizon = horizon_cap;
        const auto trace = run_activation(stopped, origin, options);
        Outcome out;
        out.truncated = !trace.quiescent;
        for (int r : radii) {
            bool all = true;
            const Window ball = Window::l1_ball(d, r);
            for (const auto& s : ball.sites())
                if (!trace.activated(s)) {
                    all = false;
                    break;
                }
            out.covered.push_back(all ? 1 : 0);
        }
        return out;
    });

    CoverageProfile profile;
    for (std::size_t j = 0; j < radii.size(); ++j) {
        CoverageRow row;
        row.radius = radii[j];
        row.replicas = replicas;
        for (const auto& o : outcomes) row.covered += static_cast<std::size_t>(o.covered[j]);
        row.p_hat = static_cast<double>(row.covered) / static_cast<double>(replicas);
        row.std_error = std::sqrt(row.p_hat * (1.0 - row.p_hat) / static_cast<double>(replicas));
        profile.rows.push_back(row);
    }
    for (const auto& o : outcomes) profile.truncated += o.truncated ? 1 : 0;
    return profile;
}

} // namespace frog
