#include "frog/reach_weight.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>
#include <string>

#include "frog/errors.hpp"
#include "frog/parallel.hpp"

namespace frog {

MarkedGraph::MarkedGraph(int sites) {
    if (sites < 0) throw ParameterError("graph size must be nonnegative");
    out_.resize(static_cast<std::size_t>(sites));
    marks_.assign(static_cast<std::size_t>(sites), 0);
}

void MarkedGraph::add_arc(int from, int to, double weight) {
    if (from < 0 || from >= size() || to < 0 || to >= size())
        throw ParameterError("arc " + std::to_string(from) + "->" + std::to_string(to) + " leaves the graph");
    if (!(weight >= 0.0 && weight <= 1.0)) throw ParameterError("arc weights must lie in [0, 1]");
    auto& arcs = out_[static_cast<std::size_t>(from)];
    for (const auto& a : arcs)
        if (a.to == to)
            throw ParameterError("duplicate arc " + std::to_string(from) + "->" + std::to_string(to));
    arcs.push_back({to, weight});
}

void MarkedGraph::set_mark(int site, bool marked) {
    if (site < 0 || site >= size()) throw ParameterError("mark on unknown site " + std::to_string(site));
    marks_[static_cast<std::size_t>(site)] = marked ? 1 : 0;
}

double MarkedGraph::weight(int from, int to) const {
    for (const auto& a : arcs(from))
        if (a.to == to) return a.weight;
    return 0.0;
}

MarkedGraph MarkedGraph::read(std::istream& in) {
    std::string line;
    auto next_line = [&]() {
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw ParameterError("graph file is empty");
    std::istringstream header(line);
    std::string word;
    int n = -1;
    if (!(header >> word >> n) || word != "sites" || n < 0) throw ParameterError("graph file must start with 'sites N'");
    MarkedGraph g(n);
    bool marks_seen = false;
    while (next_line()) {
        std::istringstream ls(line);
        ls >> word;
        if (word == "marks") {
            if (marks_seen) throw ParameterError("graph file has two 'marks' lines");
            marks_seen = true;
            int id;
            while (ls >> id) g.set_mark(id);
            if (!ls.eof()) throw ParameterError("bad mark list: " + line);
            continue;
        }
        if (marks_seen) throw ParameterError("arcs must precede the 'marks' line");
        std::istringstream es(line);
        int u, v;
        double w;
        std::string extra;
        if (!(es >> u >> v >> w) || (es >> extra)) throw ParameterError("bad arc line: " + line);
        g.add_arc(u, v, w);
    }
    if (!marks_seen) throw ParameterError("graph file lacks a 'marks' line");
    return g;
}

ReachWeight reach_weight(const MarkedGraph& g, int x, int m_max) {
    if (x < 0 || x >= g.size()) throw PreconditionError("site " + std::to_string(x) + " is not in the graph");
    if (m_max < 0) throw PreconditionError("length cap must be nonnegative");
    ReachWeight out;
    out.m_max = m_max;
    if (g.marked(x)) {
        out.value = 1.0;
        out.witness = {x};
        return out;
    }

    const auto n = static_cast<std::size_t>(g.size());
    // Per length m: best product of a length-m path x -> s, its predecessor,
    // and the rank of the chosen path among length-m paths in lexicographic order.
    std::vector<std::vector<double>> best(1, std::vector<double>(n, 0.0));
    std::vector<std::vector<int>> pred(1, std::vector<int>(n, -1));
    std::vector<std::vector<std::size_t>> rank(1, std::vector<std::size_t>(n, 0));
    best[0][static_cast<std::size_t>(x)] = 1.0;

    double top = 0.0;
    int top_m = -1, top_site = -1;
    for (int m = 1; m <= m_max; ++m) {
        const auto& prev_best = best.back();
        const auto& prev_rank = rank.back();
        std::vector<double> cur(n, 0.0);
        std::vector<int> from(n, -1);
        for (std::size_t s = 0; s < n; ++s) {
            if (prev_best[s] == 0.0) continue;
            for (const auto& a : g.arcs(static_cast<int>(s))) {
                const double cand = prev_best[s] * a.weight;
                if (cand == 0.0) continue;
                auto& slot = cur[static_cast<std::size_t>(a.to)];
                auto& p = from[static_cast<std::size_t>(a.to)];
                if (cand > slot || (cand == slot && prev_rank[s] < prev_rank[static_cast<std::size_t>(p)])) {
                    slot = cand;
                    p = static_cast<int>(s);
                }
            }
        }
        std::vector<std::size_t> order;
        for (std::size_t t = 0; t < n; ++t)
            if (cur[t] > 0.0) order.push_back(t);
        if (order.empty()) break;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto ra = prev_rank[static_cast<std::size_t>(from[a])];
            const auto rb = prev_rank[static_cast<std::size_t>(from[b])];
            return ra != rb ? ra < rb : a < b;
        });
        std::vector<std::size_t> r(n, 0);
        for (std::size_t k = 0; k < order.size(); ++k) r[order[k]] = k;

        // Strictly greater only: earlier (shorter) lengths win ties, and
        // within a length the lexicographic rank decides.
        std::size_t best_rank = n;
        int pick = -1;
        double pick_value = 0.0;
        for (std::size_t t : order) {
            if (!g.marked(static_cast<int>(t))) continue;
            const double value = cur[t] / (m + 1);
            if (value > pick_value || (value == pick_value && r[t] < best_rank)) {
                pick_value = value;
                pick = static_cast<int>(t);
                best_rank = r[t];
            }
        }
        best.push_back(std::move(cur));
        pred.push_back(std::move(from));
        rank.push_back(std::move(r));
        if (pick >= 0 && pick_value > top) {
            top = pick_value;
            top_m = m;
            top_site = pick;
        }
    }
    if (top_m < 0) return out;
    out.value = top;
    out.witness.assign(static_cast<std::size_t>(top_m + 1), 0);
    int s = top_site;
    for (int m = top_m; m >= 0; --m) {
        out.witness[static_cast<std::size_t>(m)] = s;
        s = pred[static_cast<std::size_t>(m)][static_cast<std::size_t>(s)];
    }
    return out;
}

std::vector<ReachWeight> reach_weights_all(const MarkedGraph& g, int m_max, int jobs) {
    return map_indices<ReachWeight>(static_cast<std::size_t>(g.size()), jobs,
                                    [&](std::size_t k) { return reach_weight(g, static_cast<int>(k), m_max); });
}

std::vector<ReachWeight> reach_weights_all_serial(const MarkedGraph& g, int m_max) {
    std::vector<ReachWeight> out;
    out.reserve(static_cast<std::size_t>(g.size()));
    for (int k = 0; k < g.size(); ++k) out.push_back(reach_weight(g, k, m_max));
    return out;
}

} // namespace frog
