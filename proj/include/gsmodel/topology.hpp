#pragma once

#include "gsmodel/ids.hpp"
#include "gsmodel/rational.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gsm {

class TopologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TopologyStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t min_degree = 0;
    std::size_t max_degree = 0;
    Rational avg_degree;
    /// Largest eccentricity inside any connected component.
    std::size_t diameter = 0;
    std::size_t components = 0;
};

/// Undirected simple graph over peer ids.
class Topology {
public:
    void add_node(const PeerId& p);
    /// Adds both endpoints if needed. Self-loops throw; duplicates are ignored.
    void add_edge(const PeerId& a, const PeerId& b);
    void remove_node(const PeerId& p);

    bool has_node(const PeerId& p) const { return adj_.contains(p); }
    bool has_edge(const PeerId& a, const PeerId& b) const;
    const std::set<PeerId>& neighbors(const PeerId& p) const;
    std::size_t degree(const PeerId& p) const { return neighbors(p).size(); }

    std::vector<PeerId> nodes() const;
    std::vector<std::pair<PeerId, PeerId>> edges() const;
    std::size_t node_count() const { return adj_.size(); }
    std::size_t edge_count() const;

    /// Connected components, each sorted, ordered by their smallest member.
    std::vector<std::vector<PeerId>> components() const;
    /// Components of the graph with `removed` deleted.
    std::vector<std::vector<PeerId>> components_without(const std::set<PeerId>& removed) const;

    TopologyStats stats() const;

    bool operator==(const Topology&) const = default;

private:
    std::map<PeerId, std::set<PeerId>> adj_;
};

/// Edge-list text: one "a b" pair per line, '#' comments, blank lines allowed.
/// A line holding a single name declares an isolated node.
Topology parse_edge_list(const std::string& text);
Topology load_topology(const std::string& path);
std::string to_edge_list(const Topology& topo);

/// Node names "n0".."n{n-1}", zero padded so lexical order equals numeric order.
std::vector<PeerId> numbered_nodes(std::size_t n);

/// Connected random graph with a heavy-tailed degree sequence whose average
/// degree is within 15% of `target_avg_degree` (deterministic per seed).
Topology synth_topology(std::size_t n, double target_avg_degree, std::uint64_t seed);

Topology path_topology(const std::vector<PeerId>& nodes);
Topology complete_topology(const std::vector<PeerId>& nodes);

} // namespace gsm
