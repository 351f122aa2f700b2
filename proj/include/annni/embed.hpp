#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "annni/graph.hpp"

namespace annni {

// Injective map pattern-node -> host-node id where every pattern edge lands
// on a host edge (non-induced subgraph isomorphism; spare host edges among
// the image are fine).
struct Embedding {
    std::vector<int> map;  // map[logical] = physical node id
};

enum class EmbedStatus {
    found,
    none,              // exhaustively proven absent
    budget_exhausted,  // search stopped early; absence not proven
};

struct EmbedResult {
    EmbedStatus status = EmbedStatus::none;
    std::optional<Embedding> embedding;
    std::uint64_t expansions = 0;
};

// 0 = resolve automatically: unlimited on hosts of <= 1000 nodes, 1e8 node
// expansions otherwise.
inline constexpr std::uint64_t kAutoBudget = 0;

// Complete backtracking search with degree-based pruning; candidate order is
// the host's fixed heuristic order, so results are deterministic. Returns
// `none` only when the whole search tree was explored.
EmbedResult find_embedding(const PatternGraph& pattern, const HostGraph& host,
                           const std::set<int>& excluded_nodes = {},
                           std::uint64_t budget = kAutoBudget);

// Greedy iteration: find one embedding, exclude its image, repeat until the
// search returns none (or runs out of budget). Returned embeddings are
// pairwise node-disjoint.
std::vector<Embedding> find_disjoint_embeddings(const PatternGraph& pattern,
                                                const HostGraph& host,
                                                std::uint64_t budget_per_call = kAutoBudget,
                                                EmbedStatus* last_status = nullptr);

bool is_valid_embedding(const PatternGraph& pattern, const HostGraph& host,
                        const Embedding& embedding);

// Structured file shared with the sample splitter: a list of embeddings,
// each a list of (logical, physical) pairs.
void save_embeddings(const std::string& path, int pattern_n,
                     const std::vector<Embedding>& embeddings);
std::vector<Embedding> load_embeddings(const std::string& path, int* pattern_n = nullptr);

}  // namespace annni
