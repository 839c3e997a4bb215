#include "cli_internal.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "frog/activation.hpp"
#include "frog/coverage.hpp"
#include "frog/errors.hpp"
#include "frog/factor.hpp"
#include "frog/moments.hpp"
#include "frog/parallel.hpp"
#include "frog/reach_weight.hpp"
#include "frog/recurrence.hpp"

namespace frog::cli {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string cell(long long v) { return std::to_string(v); }
std::string cell(std::size_t v) { return std::to_string(v); }
std::string cell(double v) { return format_real(v); }
std::string cell(bool v) { return v ? "true" : "false"; }

std::string coords(const Site& s) {
    std::string out;
    for (int k = 0; k < s.dim; ++k) out += (k ? " " : "") + std::to_string(s[k]);
    return out;
}

/// Collects metadata, results and CSV rows in output order.
class Report {
public:
    explicit Report(const ExperimentConfig& c) : config_(c) {
        summary_["command"] = c.command;
        summary_["config"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : c.values) summary_["config"][k] = v;
        summary_["results"] = nlohmann::ordered_json::object();
    }

    void result(const std::string& key, double v) { add(key, format_real(v), v); }
    void result(const std::string& key, long long v) { add(key, std::to_string(v), v); }
    void result(const std::string& key, std::size_t v) { add(key, std::to_string(v), v); }
    void result(const std::string& key, bool v) { add(key, cell(v), v); }
    void result(const std::string& key, const std::string& v) { add(key, v, v); }

    void columns(std::vector<std::string> names) { columns_ = std::move(names); }
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    RunOutput finish() {
        std::ostringstream out;
        out << "# command: " << config_.command << "\n";
        for (const auto& [k, v] : config_.values) out << "# config: " << k << " = " << v << "\n";
        for (const auto& [k, v] : results_) out << "# result: " << k << " = " << v << "\n";
        write_row(out, columns_);
        for (const auto& r : rows_) write_row(out, r);
        summary_["columns"] = columns_;
        summary_["rows"] = rows_.size();
        return RunOutput{out.str(), summary_};
    }

private:
    template <class T>
    void add(const std::string& key, std::string text, const T& json_value) {
        results_.emplace_back(key, std::move(text));
        summary_["results"][key] = json_value;
    }

    static void write_row(std::ostream& out, const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
        out << "\n";
    }

    const ExperimentConfig& config_;
    std::vector<std::pair<std::string, std::string>> results_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
    nlohmann::ordered_json summary_;
};

int model_dim(const ExperimentConfig& c) {
    return c.raw("model.kernel") == "comb" ? 2 : static_cast<int>(c.integer("model.d"));
}

FrogCount frog_cap(const ExperimentConfig& c) {
    const auto cap = c.integer("counts.cap");
    return cap == 0 ? kSaturatedCount : static_cast<FrogCount>(cap);
}

Window make_window(const ExperimentConfig& c, Coord L) {
    if (c.raw("model.kernel") == "comb") {
        const auto tooth = c.integer("window.tooth");
        return Window::comb(L, tooth > 0 ? static_cast<Coord>(tooth) : L);
    }
    const int d = model_dim(c);
    return c.raw("window.shape") == "cube" ? Window::cube(d, L) : Window::l1_ball(d, L);
}

FrogCounts capped(FrogCounts counts, FrogCount cap) {
    if (cap == kSaturatedCount) return counts;
    std::vector<FrogCount> v(counts.values().begin(), counts.values().end());
    for (auto& n : v) n = std::min(n, cap);
    return FrogCounts(counts.window(), std::move(v));
}

std::shared_ptr<const EnvSample> make_env(const ExperimentConfig& c, Coord auto_radius, RngStream rng) {
    const auto box = c.integer("model.box");
    const Coord B = box > 0 ? static_cast<Coord>(box) : auto_radius;
    return std::make_shared<EnvSample>(
        sample_conductance_env(LatticeBox{model_dim(c), -B, B}, build_conductance_law(c), rng));
}

RunOutput run_simulate(const ExperimentConfig& c, int jobs) {
    const auto Ls = c.integers("window.L");
    const auto R = static_cast<std::size_t>(c.integer("run.replicas"));
    const RngStream master(static_cast<std::uint64_t>(c.integer("run.seed")));
    const CountsLaw law = build_counts_law(c);
    const bool all_awake = c.raw("run.mode") == "all-awake";
    const FrogCount cap = frog_cap(c);
    const bool conductance = c.raw("model.kernel") == "conductance";
    const auto shared_kernel = conductance ? nullptr : build_kernel(c, nullptr);
    const int d = model_dim(c);
    auto horizon = [&](long long L) -> Step {
        const auto J = c.integer("run.horizon");
        return J > 0 ? J : c.integer("run.horizon_factor") * L;
    };

    struct Outcome {
        std::size_t N = 0, activated = 0;
        bool quiescent = false;
    };
    const auto outcomes = map_indices<Outcome>(Ls.size() * R, jobs, [&](std::size_t k) {
        const auto L = static_cast<Coord>(Ls[k / R]);
        const std::size_t rep = k % R;
        const Step J = horizon(L);
        const RngStream rng = master.derive(rep);
        try {
            auto kernel = shared_kernel;
            if (conductance) kernel = build_kernel(c, make_env(c, static_cast<Coord>(L + J + 1), rng));
            const FrogConfig config(sample_counts(law, make_window(c, L), rng), make_sampler(kernel, rng));
            const Site v = Site::origin(d);
            Outcome out;
            if (all_awake) {
                const auto visits = all_awake_visitors(config, v, J, cap, 1);
                out = {distinct_origins(visits, v), visits.size(), true};
            } else {
                ActivationOptions options;
                options.horizon = J;
                options.targets = {v};
                options.frog_cap = cap;
                if (const auto r = c.integer("run.max_radius"); r > 0) options.max_radius = r;
                const auto trace = run_activation(config, v, options);
                out = {trace.distinct_visitor_origins(v), trace.activated_count(), trace.quiescent};
            }
            return out;
        } catch (const WindowExhausted& e) {
            throw CliError(window_exhausted, "window-exhausted", "run.max_radius",
                           "L=" + std::to_string(L) + " replicate=" + std::to_string(rep) + ": " + e.what());
        }
    });

    Report report(c);
    report.columns(all_awake ? std::vector<std::string>{"L", "J", "replicate", "N", "visits"}
                             : std::vector<std::string>{"L", "J", "replicate", "N", "activated", "quiescent"});
    std::vector<RecurrenceSample> samples;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        const auto L = static_cast<int>(Ls[k / R]);
        const std::size_t rep = k % R;
        const auto& o = outcomes[k];
        samples.push_back({L, horizon(L), rep, o.N});
        std::vector<std::string> row = {cell(static_cast<long long>(L)), cell(static_cast<long long>(horizon(L))),
                                        cell(rep), cell(o.N), cell(o.activated)};
        if (!all_awake) row.push_back(o.quiescent ? "1" : "0");
        report.row(std::move(row));
    }
    const auto stat = recurrence_statistic(samples);
    for (const auto& s : stat.summary) {
        const std::string p = "L" + std::to_string(s.L) + ".";
        report.result(p + "J", static_cast<long long>(s.J));
        report.result(p + "q1", s.q1);
        report.result(p + "median", s.median);
        report.result(p + "q3", s.q3);
    }
    if (stat.summary.size() >= 2) {
        const auto cls = classify_recurrence(stat);
        report.result("classification", to_string(cls.verdict));
        report.result("top_half_change", cls.top_half_change);
        report.result("strictly_increasing", cls.strictly_increasing);
    } else {
        report.result("classification", std::string("n/a"));
    }
    return report.finish();
}

RunOutput run_coverage(const ExperimentConfig& c, int jobs) {
    const auto R = static_cast<std::size_t>(c.integer("run.replicas"));
    const RngStream master(static_cast<std::uint64_t>(c.integer("run.seed")));
    const CountsLaw law = build_counts_law(c);
    const FrogCount cap = frog_cap(c);
    const auto kernel = build_kernel(c, nullptr);
    const int d = model_dim(c);
    std::vector<int> radii;
    for (auto r : c.integers("coverage.radii")) radii.push_back(static_cast<int>(r));

    Report report(c);
    report.columns({"L", "radius", "replicas", "covered", "p_hat", "std_error"});
    for (auto L : c.integers("window.L")) {
        const Window window = make_window(c, static_cast<Coord>(L));
        const ConfigFactory factory = [&](RngStream s) {
            return FrogConfig(capped(sample_counts(law, window, s), cap), make_sampler(kernel, s));
        };
        const auto profile = coverage_profile(factory, c.real("model.eps"), d, radii, R, master,
                                              c.integer("coverage.horizon_cap"), jobs);
        for (const auto& r : profile.rows)
            report.row({cell(L), cell(static_cast<long long>(r.radius)), cell(r.replicas), cell(r.covered),
                        cell(r.p_hat), cell(r.std_error)});
        report.result("L" + std::to_string(L) + ".truncated", profile.truncated);
    }
    return report.finish();
}

RunOutput run_dx(const ExperimentConfig& c, int jobs) {
    const auto& path = c.raw("dx.graph");
    std::ifstream in(path);
    if (!in) throw CliError(io_error, "io", "dx.graph", "cannot open " + path);
    MarkedGraph g;
    try {
        g = MarkedGraph::read(in);
    } catch (const ParameterError& e) {
        throw CliError(config_error, "input", "dx.graph", e.what());
    }
    const int m_max = static_cast<int>(c.integer("dx.m_max"));
    const auto site = c.integer("dx.site");
    if (site >= g.size()) throw CliError(config_error, "config", "dx.site", "site id out of range");

    std::vector<std::pair<int, ReachWeight>> results;
    if (site < 0) {
        const auto all = reach_weights_all(g, m_max, jobs);
        for (int x = 0; x < g.size(); ++x) results.emplace_back(x, all[static_cast<std::size_t>(x)]);
    } else {
        results.emplace_back(static_cast<int>(site), reach_weight(g, static_cast<int>(site), m_max));
    }

    Report report(c);
    std::size_t marked = 0;
    for (int x = 0; x < g.size(); ++x) marked += g.marked(x) ? 1 : 0;
    report.result("sites", static_cast<long long>(g.size()));
    report.result("marked", marked);
    report.columns({"site", "value", "length", "witness"});
    for (const auto& [x, rw] : results) {
        std::string witness;
        for (std::size_t k = 0; k < rw.witness.size(); ++k) witness += (k ? " " : "") + std::to_string(rw.witness[k]);
        const long long length = rw.witness.empty() ? -1 : static_cast<long long>(rw.witness.size()) - 1;
        report.row({cell(static_cast<long long>(x)), cell(rw.value), cell(length), witness});
    }
    return report.finish();
}

RunOutput run_series(const ExperimentConfig& c, int) {
    const auto rep = series_oracle(c.real("series.a"), c.real("series.c"), static_cast<int>(c.integer("series.d")),
                                   build_y_law(c), static_cast<std::uint64_t>(c.integer("series.n_max")),
                                   RngStream(static_cast<std::uint64_t>(c.integer("run.seed"))));
    Report report(c);
    report.result("verdict", to_string(rep.verdict));
    if (rep.tail_bound) report.result("tail_bound", *rep.tail_bound);
    else report.result("tail_bound", std::string("none"));
    if (!rep.checkpoints.empty()) report.result("final_sum", rep.checkpoints.back().partial_sum);
    report.columns({"n", "partial_sum"});
    for (const auto& cp : rep.checkpoints) report.row({cell(static_cast<long long>(cp.n)), cell(cp.partial_sum)});
    return report.finish();
}

RunOutput run_drift_check(const ExperimentConfig& c, int) {
    const auto radius = static_cast<Coord>(c.integer("drift.radius"));
    std::shared_ptr<const Kernel> kernel;
    if (c.raw("model.kernel") == "conductance")
        kernel = build_kernel(c, make_env(c, radius + 1, RngStream(static_cast<std::uint64_t>(c.integer("run.seed")))));
    else
        kernel = build_kernel(c, nullptr);
    const Window sites = c.raw("model.kernel") == "comb" ? Window::comb(radius, radius)
                                                          : Window::l1_ball(model_dim(c), radius);
    DriftReport rep;
    try {
        rep = check_drift_condition(*kernel, sites.sites(), c.real("drift.delta"));
    } catch (const ParameterError& e) {
        throw CliError(config_error, "config", "drift.delta", e.what());
    }
    Report report(c);
    report.result("holds", rep.holds);
    report.result("worst_margin", rep.worst_margin);
    report.columns({"holds", "worst_site", "worst_margin", "delta", "range", "sites_checked"});
    report.row({cell(rep.holds), coords(rep.worst_site), cell(rep.worst_margin), cell(rep.delta),
                cell(static_cast<long long>(rep.range)), cell(rep.sites_checked)});
    return report.finish();
}

RunOutput run_factor(const ExperimentConfig& c, int) {
    const double p2 = c.real("factor.p2");
    const auto height = c.integer("factor.height");
    FactorMeasure m;
    try {
        m = height > 0 ? factor_invariant_measure(p2, static_cast<int>(height)) : factor_invariant_measure(p2);
    } catch (const NoInvariantMeasure& e) {
        throw CliError(domain_error, "no-invariant-measure", "factor.p2", e.what());
    }
    Report report(c);
    report.result("height", static_cast<long long>(m.height));
    report.result("residual", m.residual);
    report.result("mass", m.mass);
    report.result("tail", m.tail);
    report.columns({"y", "mu"});
    for (std::size_t y = 0; y < m.mu.size(); ++y) report.row({cell(y), cell(m.mu[y])});
    return report.finish();
}

RunOutput run_raabe(const ExperimentConfig& c, int) {
    const int d = static_cast<int>(c.integer("raabe.d"));
    const auto grid = geometric_grid(c.real("raabe.r_min"), c.real("raabe.r_max"), c.real("raabe.factor"));
    const auto t = raabe_ratio_table(c.real("raabe.eps"), d, c.real("raabe.c_so"), grid,
                                     sphere_constants(d, static_cast<int>(c.integer("raabe.r_sphere"))));
    Report report(c);
    report.result("c_dd", t.constants.c_dd);
    report.result("c_cc", t.constants.c_cc);
    report.result("c_neu", t.c_neu);
    report.result("closed_form_limit", t.closed_form_limit);
    report.result("empirical_limit", t.empirical_limit);
    report.result("below_minus_one", t.below_minus_one);
    report.columns({"r", "value"});
    for (const auto& r : t.rows) report.row({cell(r.r), cell(r.value)});
    return report.finish();
}

StepLaw build_step_law(const ExperimentConfig& c, int d) {
    StepLaw law;
    std::istringstream in(c.raw("model.residual"));
    std::string entry;
    while (std::getline(in, entry, ';')) {
        const auto colon = entry.find(':');
        const std::string off = entry.substr(0, colon);
        Site s = Site::origin(d);
        if (off[1] == 'e') {
            const int axis = std::stoi(off.substr(2)) - 1;
            if (axis >= d) throw ParameterError("residual step " + off + " exceeds dimension " + std::to_string(d));
            s = Site::unit(d, axis, off[0] == '+' ? 1 : -1);
        } else {
            std::istringstream cs(off);
            std::string part;
            int k = 0;
            while (std::getline(cs, part, ',')) {
                if (k >= d) throw ParameterError("residual step " + off + " has the wrong dimension");
                s[k++] = static_cast<Coord>(std::stol(part));
            }
            if (k != d) throw ParameterError("residual step " + off + " has the wrong dimension");
        }
        law.steps.push_back({s, std::stod(entry.substr(colon + 1))});
    }
    return law;
}

} // namespace

ConductanceLaw build_conductance_law(const ExperimentConfig& c) {
    if (c.raw("model.conductance") == "uniform") return ConductanceLaw::uniform(c.real("model.lo"), c.real("model.hi"));
    return ConductanceLaw::bernoulli(c.real("model.p"));
}

std::shared_ptr<const Kernel> build_kernel(const ExperimentConfig& c, std::shared_ptr<const EnvSample> env) {
    const auto& kind = c.raw("model.kernel");
    const auto d = c.integer("model.d");
    if (kind != "comb" && (d < 1 || d > kMaxDim)) throw ParameterError("d must lie in 1..3");
    if (kind == "elliptic")
        return std::make_shared<EllipticDriftKernel>(static_cast<int>(d), c.real("model.eps"),
                                                     build_step_law(c, static_cast<int>(d)));
    if (kind == "comb") return std::make_shared<CombKernel>(c.real("model.p1"), c.real("model.p2"));
    if (kind == "outward") return std::make_shared<OutwardDriftKernel>(static_cast<int>(d), c.real("model.bias"));
    (void)build_conductance_law(c);
    if (!env) return nullptr;
    return std::make_shared<ConductanceKernel>(std::move(env));
}

CountsLaw build_counts_law(const ExperimentConfig& c) {
    const auto& law = c.raw("counts.law");
    const auto nonneg = [](long long v, const char* what) {
        if (v < 0) throw ParameterError(std::string(what) + " must be nonnegative");
        return static_cast<FrogCount>(v);
    };
    if (law == "constant") return CountsLaw::constant(nonneg(c.integer("counts.m"), "counts.m"));
    if (law == "bernoulli") return CountsLaw::bernoulli(c.real("counts.p"));
    if (law == "logtail")
        return CountsLaw::logtail(c.real("counts.c0"), static_cast<int>(c.integer("counts.d")),
                                  nonneg(c.integer("counts.t0"), "counts.t0"));
    if (law == "logmoment") return CountsLaw::logmoment(c.real("counts.theta"));
    return CountsLaw::comb(CountsLaw::logmoment(c.real("counts.theta")),
                           CountsLaw::constant(nonneg(c.integer("counts.m"), "counts.m")));
}

YLaw build_y_law(const ExperimentConfig& c) {
    const auto& kind = c.raw("series.y");
    if (kind == "zero") return YLaw::zero();
    if (kind == "constant") return YLaw::constant(c.real("series.value"));
    if (kind == "logtail") return YLaw::logtail(c.real("series.theta"));
    return YLaw::lognormal(c.real("series.mu"), c.real("series.sigma"), c.real("series.bound"));
}

RunOutput run_experiment(const ExperimentConfig& config, int jobs) {
    try {
        const auto& cmd = config.command;
        if (cmd == "simulate") return run_simulate(config, jobs);
        if (cmd == "coverage") return run_coverage(config, jobs);
        if (cmd == "dx") return run_dx(config, jobs);
        if (cmd == "series") return run_series(config, jobs);
        if (cmd == "drift-check") return run_drift_check(config, jobs);
        if (cmd == "factor") return run_factor(config, jobs);
        if (cmd == "raabe") return run_raabe(config, jobs);
        throw CliError(config_error, "usage", "-", "unknown subcommand '" + cmd + "'");
    } catch (const CliError&) {
        throw;
    } catch (const WindowExhausted& e) {
        throw CliError(window_exhausted, "window-exhausted", "-", e.what());
    } catch (const ParameterError& e) {
        throw CliError(config_error, "config", "-", e.what());
    } catch (const NoInvariantMeasure& e) {
        throw CliError(domain_error, "no-invariant-measure", "-", e.what());
    } catch (const PreconditionError& e) {
        throw CliError(domain_error, "domain", "-", e.what());
    }
}

} // namespace frog::cli
