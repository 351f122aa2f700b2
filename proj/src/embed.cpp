#include "annni/embed.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace annni {

namespace {

using Bits = std::vector<std::uint64_t>;

void clear_bit(Bits& bits, int i) {
    bits[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

void set_bit(Bits& bits, int i) {
    bits[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63);
}

// Static variable order: start at the highest-degree pattern node, then
// repeatedly take the node with the most already-placed neighbors.
std::vector<int> pattern_order(const PatternGraph& pattern) {
    const auto deg = pattern.degrees();
    const auto adj = pattern.adjacency();
    const int n = pattern.n;
    std::vector<int> order;
    std::vector<bool> placed(n, false);
    std::vector<int> placed_neighbors(n, 0);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            if (best == -1 || placed_neighbors[v] > placed_neighbors[best] ||
                (placed_neighbors[v] == placed_neighbors[best] &&
                 (deg[v] > deg[best] || (deg[v] == deg[best] && v < best))))
                best = v;
        }
        order.push_back(best);
        placed[best] = true;
        for (int w : adj[best]) ++placed_neighbors[w];
    }
    return order;
}

struct Searcher {
    const PatternGraph& pattern;
    const HostGraph& host;
    std::uint64_t budget;  // 0 = unlimited
    std::uint64_t expansions = 0;
    bool out_of_budget = false;

    std::vector<int> order;                  // pattern nodes in placement order
    std::vector<std::vector<int>> earlier;   // per order position: placed pattern neighbors
    std::vector<int> position;               // pattern node -> order position
    std::vector<int> pattern_degree;
    std::vector<int> image;                  // pattern node -> internal host node (-1 unset)
    Bits available;                          // internal host nodes still usable
    std::vector<Bits> degree_ok;             // per order position: residual-degree prune mask
    std::size_t blocks;

    Searcher(const PatternGraph& p, const HostGraph& h, const std::set<int>& excluded,
             std::uint64_t b)
        : pattern(p), host(h), budget(b), blocks(h.block_count()) {
        order = pattern_order(p);
        position.assign(p.n, 0);
        for (int i = 0; i < p.n; ++i) position[order[i]] = i;
        const auto adj = p.adjacency();
        earlier.resize(p.n);
        for (int i = 0; i < p.n; ++i)
            for (int w : adj[order[i]])
                if (position[w] < i) earlier[i].push_back(w);
        pattern_degree = p.degrees();

        image.assign(p.n, -1);
        available.assign(blocks, 0);
        for (int v = 0; v < h.node_count(); ++v) set_bit(available, v);
        // mask off bits past node_count
        if (h.node_count() % 64 != 0 && !available.empty())
            available.back() &= (std::uint64_t{1} << (h.node_count() % 64)) - 1;
        std::vector<int> residual_degree(h.node_count());
        for (int v = 0; v < h.node_count(); ++v) residual_degree[v] = h.degree(v);
        for (int id : excluded) {
            const int v = h.internal_index(id);
            if (v < 0) continue;
            clear_bit(available, v);
            for (int w : h.neighbors(v)) --residual_degree[w];
        }
        degree_ok.resize(p.n);
        for (int i = 0; i < p.n; ++i) {
            degree_ok[i].assign(blocks, 0);
            const int need = pattern_degree[order[i]];
            for (int v = 0; v < h.node_count(); ++v)
                if (residual_degree[v] >= need) set_bit(degree_ok[i], v);
        }
    }

    bool search(int depth) {
        if (depth == pattern.n) return true;
        const int u = order[depth];
        Bits candidates = degree_ok[depth];
        for (std::size_t b = 0; b < blocks; ++b) candidates[b] &= available[b];
        for (int w : earlier[depth]) {
            const Bits& adj = host.adjacency_bits(image[w]);
            for (std::size_t b = 0; b < blocks; ++b) candidates[b] &= adj[b];
        }
        for (std::size_t b = 0; b < blocks; ++b) {
            std::uint64_t word = candidates[b];
            while (word) {
                const int v = static_cast<int>(b * 64 + std::countr_zero(word));
                word &= word - 1;
                if (budget != 0 && ++expansions > budget) {
                    out_of_budget = true;
                    return false;
                }
                if (budget == 0) ++expansions;
                image[u] = v;
                clear_bit(available, v);
                if (search(depth + 1)) return true;
                set_bit(available, v);
                image[u] = -1;
                if (out_of_budget) return false;
            }
        }
        return false;
    }
};

std::uint64_t resolve_budget(const HostGraph& host, std::uint64_t budget) {
    if (budget != kAutoBudget) return budget;
    return host.node_count() > 1000 ? 100'000'000ULL : 0;
}

}  // namespace

EmbedResult find_embedding(const PatternGraph& pattern, const HostGraph& host,
                           const std::set<int>& excluded_nodes, std::uint64_t budget) {
    EmbedResult result;
    if (pattern.n > host.node_count()) {
        result.status = EmbedStatus::none;
        return result;
    }
    Searcher searcher(pattern, host, excluded_nodes, resolve_budget(host, budget));
    const bool found = searcher.search(0);
    result.expansions = searcher.expansions;
    if (found) {
        Embedding embedding;
        embedding.map.resize(pattern.n);
        for (int u = 0; u < pattern.n; ++u) embedding.map[u] = host.node_ids()[searcher.image[u]];
        result.embedding = std::move(embedding);
        result.status = EmbedStatus::found;
    } else {
        result.status = searcher.out_of_budget ? EmbedStatus::budget_exhausted : EmbedStatus::none;
    }
    return result;
}

std::vector<Embedding> find_disjoint_embeddings(const PatternGraph& pattern,
                                                const HostGraph& host,
                                                std::uint64_t budget_per_call,
                                                EmbedStatus* last_status) {
    std::vector<Embedding> found;
    std::set<int> used;
    for (;;) {
        EmbedResult r = find_embedding(pattern, host, used, budget_per_call);
        if (last_status) *last_status = r.status;
        if (r.status != EmbedStatus::found) break;
        for (int id : r.embedding->map) used.insert(id);
        found.push_back(std::move(*r.embedding));
    }
    return found;
}

bool is_valid_embedding(const PatternGraph& pattern, const HostGraph& host,
                        const Embedding& embedding) {
    if (static_cast<int>(embedding.map.size()) != pattern.n) return false;
    std::set<int> image(embedding.map.begin(), embedding.map.end());
    if (static_cast<int>(image.size()) != pattern.n) return false;  // injectivity
    for (int id : embedding.map)
        if (host.internal_index(id) < 0) return false;
    for (const auto& [u, v] : pattern.edges) {
        const int a = host.internal_index(embedding.map[u]);
        const int b = host.internal_index(embedding.map[v]);
        if (!host.has_edge(a, b)) return false;
    }
    return true;
}

void save_embeddings(const std::string& path, int pattern_n,
                     const std::vector<Embedding>& embeddings) {
    nlohmann::json doc;
    doc["pattern_n"] = pattern_n;
    doc["embeddings"] = nlohmann::json::array();
    for (const auto& embedding : embeddings) {
        nlohmann::json pairs = nlohmann::json::array();
        for (int logical = 0; logical < static_cast<int>(embedding.map.size()); ++logical)
            pairs.push_back({logical, embedding.map[logical]});
        doc["embeddings"].push_back(std::move(pairs));
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_embeddings: cannot write " + path);
    out << doc.dump(1) << "\n";
}

std::vector<Embedding> load_embeddings(const std::string& path, int* pattern_n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_embeddings: cannot open " + path);
    nlohmann::json doc;
    in >> doc;
    const int n = doc.at("pattern_n").get<int>();
    if (n < 1) throw std::runtime_error("load_embeddings: bad pattern_n");
    if (pattern_n) *pattern_n = n;
    std::vector<Embedding> embeddings;
    for (const auto& pairs : doc.at("embeddings")) {
        Embedding embedding;
        embedding.map.assign(n, -1);
        for (const auto& pair : pairs) {
            const int logical = pair.at(0).get<int>();
            const int physical = pair.at(1).get<int>();
            if (logical < 0 || logical >= n)
                throw std::runtime_error("load_embeddings: logical site out of range");
            embedding.map[logical] = physical;
        }
        for (int id : embedding.map)
            if (id < 0) throw std::runtime_error("load_embeddings: missing logical site");
        embeddings.push_back(std::move(embedding));
    }
    return embeddings;
}

}  // namespace annni
