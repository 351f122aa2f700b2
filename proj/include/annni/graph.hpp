#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace annni {

// Interaction graph of the model to embed: n nodes labelled 0..n-1.
struct PatternGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    std::vector<int> degrees() const;
    std::vector<std::vector<int>> adjacency() const;
};

// Ring with edges at offsets 1 and 2 (the J1/J2 interaction graph);
// 4-regular with 2n edges for n >= 5.
PatternGraph circulant(int n);

// Hardware connectivity graph. Node ids may be sparse; internally nodes are
// relabelled in fixed heuristic order (descending degree, ties by id) so
// searches are reproducible run to run.
class HostGraph {
  public:
    HostGraph(std::vector<int> node_ids, std::vector<std::pair<int, int>> edges);

    // Edge-list text file: one "u v" pair per line, '#' comments allowed.
    static HostGraph load(const std::string& path);

    int node_count() const { return static_cast<int>(ids_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    // Nodes in heuristic order; index i is the internal label.
    const std::vector<int>& node_ids() const { return ids_; }
    int internal_index(int node_id) const;  // -1 when absent
    int degree(int internal) const { return static_cast<int>(adj_[internal].size()); }
    const std::vector<int>& neighbors(int internal) const { return adj_[internal]; }

    bool has_edge(int internal_u, int internal_v) const {
        return adj_bits_[internal_u][static_cast<std::size_t>(internal_v) >> 6] >>
                   (internal_v & 63) &
               1u;
    }
    // Adjacency row as 64-bit blocks, for candidate intersection.
    const std::vector<std::uint64_t>& adjacency_bits(int internal) const {
        return adj_bits_[internal];
    }
    std::size_t block_count() const { return blocks_; }

  private:
    std::vector<int> ids_;                             // internal -> original id
    std::unordered_map<int, int> index_;               // original id -> internal
    std::vector<std::vector<int>> adj_;                // internal adjacency lists
    std::vector<std::vector<std::uint64_t>> adj_bits_; // internal adjacency bitsets
    std::size_t blocks_ = 0;
    std::size_t edge_count_ = 0;
};

}  // namespace annni
