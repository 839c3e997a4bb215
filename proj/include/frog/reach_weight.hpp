#pragma once

#include <iosfwd>
#include <vector>

namespace frog {

/// Directed weighted graph on sites 0..n-1 with marked sites.
class MarkedGraph {
public:
    struct Arc {
        int to;
        double weight;
    };

    explicit MarkedGraph(int sites = 0);

    int size() const { return static_cast<int>(out_.size()); }
    /// Weights must lie in [0, 1]; an arc may only be added once.
    void add_arc(int from, int to, double weight);
    void set_mark(int site, bool marked = true);
    bool marked(int site) const { return marks_.at(static_cast<std::size_t>(site)) != 0; }
    const std::vector<Arc>& arcs(int site) const { return out_.at(static_cast<std::size_t>(site)); }
    /// Weight of the arc, or 0 if absent.
    double weight(int from, int to) const;

    /// "sites N", then "u v weight" lines, then "marks id id ...".
    static MarkedGraph read(std::istream& in);

private:
    std::vector<std::vector<Arc>> out_;
    std::vector<char> marks_;
};

struct ReachWeight {
    double value = 0.0;
    /// x = x_0, ..., x_m ending at a marked site; empty when value is 0.
    std::vector<int> witness;
    int m_max = 0;
};

/// max over paths x_0 = x, ..., x_m (m <= m_max) ending at a marked site of
/// prod w(x_{i-1}, x_i) / (m + 1). Among equal values the shorter path wins,
/// then the lexicographically smaller one. Zero-weight arcs are never used.
ReachWeight reach_weight(const MarkedGraph& g, int x, int m_max);

/// reach_weight for every site, parallel over sites.
std::vector<ReachWeight> reach_weights_all(const MarkedGraph& g, int m_max, int jobs = 0);
std::vector<ReachWeight> reach_weights_all_serial(const MarkedGraph& g, int m_max);

} // namespace frog
