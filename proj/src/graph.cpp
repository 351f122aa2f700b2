#include "annni/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace annni {

std::vector<int> PatternGraph::degrees() const {
    std::vector<int> deg(n, 0);
    for (const auto& [u, v] : edges) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

std::vector<std::vector<int>> PatternGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

PatternGraph circulant(int n) {
    if (n < 5) throw std::invalid_argument("circulant: n must be >= 5");
    PatternGraph g;
    g.n = n;
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        for (int offset : {1, 2}) {
            int u = i, v = (i + offset) % n;
            if (u > v) std::swap(u, v);
            edges.insert({u, v});
        }
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

HostGraph::HostGraph(std::vector<int> node_ids, std::vector<std::pair<int, int>> edges) {
    std::set<int> nodes(node_ids.begin(), node_ids.end());
    std::set<std::pair<int, int>> dedup;
    for (auto [u, v] : edges) {
        if (u == v) throw std::invalid_argument("HostGraph: self-loop on node " +
                                                std::to_string(u));
        nodes.insert(u);
        nodes.insert(v);
        if (u > v) std::swap(u, v);
        dedup.insert({u, v});
    }

    // Degree for the ordering heuristic.
    std::unordered_map<int, int> degree_by_id;
    for (int id : nodes) degree_by_id[id] = 0;
    for (const auto& [u, v] : dedup) {
        ++degree_by_id[u];
        ++degree_by_id[v];
    }
    ids_.assign(nodes.begin(), nodes.end());
    std::sort(ids_.begin(), ids_.end(), [&](int a, int b) {
        if (degree_by_id[a] != degree_by_id[b]) return degree_by_id[a] > degree_by_id[b];
        return a < b;
    });
    for (std::size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = static_cast<int>(i);

    blocks_ = (ids_.size() + 63) / 64;
    adj_.assign(ids_.size(), {});
    adj_bits_.assign(ids_.size(), std::vector<std::uint64_t>(blocks_, 0));
    for (const auto& [u, v] : dedup) {
        const int a = index_[u], b = index_[v];
        adj_[a].push_back(b);
        adj_[b].push_back(a);
        adj_bits_[a][static_cast<std::size_t>(b) >> 6] |= std::uint64_t{1} << (b & 63);
        adj_bits_[b][static_cast<std::size_t>(a) >> 6] |= std::uint64_t{1} << (a & 63);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
    edge_count_ = dedup.size();
}

HostGraph HostGraph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("HostGraph: cannot open " + path);
    std::vector<std::pair<int, int>> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        int u, v;
        if (!(ss >> u)) continue;  // blank or comment-only line
        if (!(ss >> v))
            throw std::runtime_error("HostGraph: malformed line " + std::to_string(lineno) +
                                     " in " + path);
        int extra;
        if (ss >> extra)
            throw std::runtime_error("HostGraph: trailing tokens on line " +
                                     std::to_string(lineno) + " in " + path);
        edges.push_back({u, v});
    }
    return HostGraph({}, std::move(edges));
}

int HostGraph::internal_index(int node_id) const {
    auto it = index_.find(node_id);
    return it == index_.end() ? -1 : it->second;
}

}  // namespace annni
