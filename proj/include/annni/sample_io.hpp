#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "annni/embed.hpp"
#include "annni/empirical.hpp"

namespace annni {

// Samples text format: one configuration per line, n whitespace-separated
// tokens, all {-1,1} or all {0,1} file-wide (auto-detected; mixing is
// rejected). Token order: first token is site 0 (stored in bit 0). Lines
// starting with '#' are ignored.
EmpiricalDistribution ingest_samples(const std::string& path, int n);

// Writes one line per recorded sample in the +-1 encoding, ordered by
// configuration index.
void write_samples(const std::string& path, const EmpiricalDistribution& dist);

// Raw hardware export: CSV whose header lists physical column ids and whose
// rows hold one +-1 readout per column. Every row yields one logical sample
// per embedding; all embeddings are pooled with equal weight, so
// total = rows x embeddings. Embeddings must be pairwise disjoint in
// physical columns; indices in `excluded_embeddings` are skipped (e.g. for
// embeddings known to be broken).
EmpiricalDistribution split_parallel_embeddings(
    const std::string& raw_path, const std::vector<Embedding>& embeddings, int n,
    const std::set<std::size_t>& excluded_embeddings = {});

}  // namespace annni
