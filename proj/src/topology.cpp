#include "gsmodel/topology.hpp"

#include "gsmodel/oracle.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <deque>
#include <fstream>
#include <sstream>

namespace gsm {

namespace {

const std::set<PeerId> kNone;

std::vector<std::vector<PeerId>> components_of(const std::map<PeerId, std::set<PeerId>>& adj,
                                               const std::set<PeerId>& removed)
{
    std::vector<std::vector<PeerId>> out;
    std::set<PeerId> visited;
    for (const auto& [start, _] : adj) {
        if (removed.contains(start) || visited.contains(start)) {
            continue;
        }
        std::vector<PeerId> comp;
        std::deque<PeerId> queue{start};
        visited.insert(start);
        while (!queue.empty()) {
            PeerId p = queue.front();
            queue.pop_front();
            comp.push_back(p);
            for (const PeerId& q : adj.at(p)) {
                if (!removed.contains(q) && visited.insert(q).second) {
                    queue.push_back(q);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

double unit_draw(Oracle& o) { return static_cast<double>(o.next() >> 11) * 0x1.0p-53; }

Topology chung_lu(std::size_t n, double scale, std::uint64_t seed)
{
    const auto ids = numbered_nodes(n);
    Oracle oracle(seed);
    // Heavy-tailed expected degrees, w_i proportional to (i + 1)^(-1/(gamma - 1)) with gamma = 2.2.
    std::vector<double> w(n);
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::pow(static_cast<double>(i + 1), -1.0 / 1.2);
        sum += w[i];
    }
    for (double& x : w) {
        x *= scale * static_cast<double>(n) / sum;
    }
    double total = 0;
    for (double x : w) {
        total += x;
    }
    Topology topo;
    for (const PeerId& p : ids) {
        topo.add_node(p);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = std::min(1.0, w[i] * w[j] / total);
            if (unit_draw(oracle) < p) {
                topo.add_edge(ids[i], ids[j]);
            }
        }
    }
    // Stitch every minor component to the largest one with a single edge.
    auto comps = topo.components();
    std::size_t giant = 0;
    for (std::size_t k = 1; k < comps.size(); ++k) {
        if (comps[k].size() > comps[giant].size()) {
            giant = k;
        }
    }
    for (std::size_t k = 0; k < comps.size(); ++k) {
        if (k == giant) {
            continue;
        }
        const PeerId& a = comps[k][oracle.below(comps[k].size())];
        const PeerId& b = comps[giant][oracle.below(comps[giant].size())];
        topo.add_edge(a, b);
    }
    return topo;
}

} // namespace

void Topology::add_node(const PeerId& p)
{
    if (p.empty()) {
        throw TopologyError("empty node name");
    }
    adj_[p];
}

void Topology::add_edge(const PeerId& a, const PeerId& b)
{
    if (a == b) {
        throw TopologyError("self-loop on " + a.str());
    }
    add_node(a);
    add_node(b);
    adj_[a].insert(b);
    adj_[b].insert(a);
}

void Topology::remove_node(const PeerId& p)
{
    auto it = adj_.find(p);
    if (it == adj_.end()) {
        return;
    }
    for (const PeerId& q : it->second) {
        adj_[q].erase(p);
    }
    adj_.erase(it);
}

bool Topology::has_edge(const PeerId& a, const PeerId& b) const
{
    auto it = adj_.find(a);
    return it != adj_.end() && it->second.contains(b);
}

const std::set<PeerId>& Topology::neighbors(const PeerId& p) const
{
    auto it = adj_.find(p);
    return it == adj_.end() ? kNone : it->second;
}

std::vector<PeerId> Topology::nodes() const
{
    std::vector<PeerId> out;
    out.reserve(adj_.size());
    for (const auto& [p, _] : adj_) {
        out.push_back(p);
    }
    return out;
}

std::vector<std::pair<PeerId, PeerId>> Topology::edges() const
{
    std::vector<std::pair<PeerId, PeerId>> out;
    for (const auto& [p, nbrs] : adj_) {
        for (const PeerId& q : nbrs) {
            if (p < q) {
                out.emplace_back(p, q);
            }
        }
    }
    return out;
}

std::size_t Topology::edge_count() const
{
    std::size_t twice = 0;
    for (const auto& [_, nbrs] : adj_) {
        twice += nbrs.size();
    }
    return twice / 2;
}

std::vector<std::vector<PeerId>> Topology::components() const { return components_of(adj_, {}); }

std::vector<std::vector<PeerId>> Topology::components_without(const std::set<PeerId>& removed) const
{
    return components_of(adj_, removed);
}

TopologyStats Topology::stats() const
{
    TopologyStats s;
    s.nodes = adj_.size();
    s.edges = edge_count();
    if (s.nodes == 0) {
        return s;
    }
    s.min_degree = SIZE_MAX;
    for (const auto& [_, nbrs] : adj_) {
        s.min_degree = std::min(s.min_degree, nbrs.size());
        s.max_degree = std::max(s.max_degree, nbrs.size());
    }
    s.avg_degree = Rational(static_cast<unsigned long>(2 * s.edges), static_cast<unsigned long>(s.nodes));
    s.avg_degree.canonicalize();
    s.components = components().size();

    // BFS from every node over dense indices.
    std::map<PeerId, std::size_t> index;
    std::vector<std::vector<std::size_t>> adj(adj_.size());
    for (const auto& [p, _] : adj_) {
        index.emplace(p, index.size());
    }
    for (const auto& [p, nbrs] : adj_) {
        for (const PeerId& q : nbrs) {
            adj[index[p]].push_back(index[q]);
        }
    }
    std::vector<std::size_t> dist(adj.size());
    std::vector<std::size_t> queue(adj.size());
    for (std::size_t src = 0; src < adj.size(); ++src) {
        std::fill(dist.begin(), dist.end(), SIZE_MAX);
        dist[src] = 0;
        std::size_t head = 0, tail = 0;
        queue[tail++] = src;
        while (head < tail) {
            std::size_t u = queue[head++];
            s.diameter = std::max(s.diameter, dist[u]);
            for (std::size_t v : adj[u]) {
                if (dist[v] == SIZE_MAX) {
                    dist[v] = dist[u] + 1;
                    queue[tail++] = v;
                }
            }
        }
    }
    return s;
}

Topology parse_edge_list(const std::string& text)
{
    Topology topo;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::vector<std::string> parts;
        for (std::string f; fields >> f;) {
            parts.push_back(f);
        }
        try {
            if (parts.empty()) {
                continue;
            }
            if (parts.size() == 1) {
                topo.add_node(PeerId(parts[0]));
            } else if (parts.size() == 2) {
                topo.add_edge(PeerId(parts[0]), PeerId(parts[1]));
            } else {
                throw TopologyError("expected 'a b', got " + std::to_string(parts.size()) + " fields");
            }
        } catch (const TopologyError& err) {
            throw TopologyError("line " + std::to_string(lineno) + ": " + err.what());
        }
    }
    return topo;
}

Topology load_topology(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw TopologyError("cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str());
}

std::string to_edge_list(const Topology& topo)
{
    std::string out;
    for (const PeerId& p : topo.nodes()) {
        if (topo.degree(p) == 0) {
            out += p.str() + "\n";
        }
    }
    for (const auto& [a, b] : topo.edges()) {
        out += a.str() + " " + b.str() + "\n";
    }
    return out;
}

std::vector<PeerId> numbered_nodes(std::size_t n)
{
    const std::size_t width = n <= 1 ? 1 : std::to_string(n - 1).size();
    std::vector<PeerId> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string digits = std::to_string(i);
        out.emplace_back("n" + std::string(width - digits.size(), '0') + digits);
    }
    return out;
}

Topology synth_topology(std::size_t n, double target_avg_degree, std::uint64_t seed)
{
    if (n == 0) {
        throw TopologyError("synth_topology: n must be >= 1");
    }
    if (n == 1) {
        Topology t;
        t.add_node(numbered_nodes(1)[0]);
        return t;
    }
    const double target = std::min(target_avg_degree, static_cast<double>(n - 1));
    // Truncation at probability 1 loses edges around hubs; rescale until the
    // realised average lands close to the target.
    double scale = 1.0;
    Topology best = chung_lu(n, scale * target, seed);
    for (int attempt = 0; attempt < 12; ++attempt) {
        const double avg = 2.0 * static_cast<double>(best.edge_count()) / static_cast<double>(n);
        if (std::abs(avg - target) <= 0.03 * target) {
            break;
        }
        scale *= target / avg;
        best = chung_lu(n, scale * target, seed);
    }
    return best;
}

Topology path_topology(const std::vector<PeerId>& nodes)
{
    Topology t;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        t.add_node(nodes[i]);
        if (i) {
            t.add_edge(nodes[i - 1], nodes[i]);
        }
    }
    return t;
}

Topology complete_topology(const std::vector<PeerId>& nodes)
{
    Topology t;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        t.add_node(nodes[i]);
        for (std::size_t j = 0; j < i; ++j) {
            t.add_edge(nodes[j], nodes[i]);
        }
    }
    return t;
}

} // namespace gsm
