#include "annni/sample_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace annni {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t lineno, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
}

}  // namespace

EmpiricalDistribution ingest_samples(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ingest_samples: cannot open " + path);

    EmpiricalDistribution dist(n);
    // 0 = undecided, 1 = {0,1}, 2 = {-1,1}; "1" alone is valid either way.
    int encoding = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') continue;
        std::istringstream ss(line);
        std::uint32_t index = 0;
        int site = 0;
        long token;
        while (ss >> token) {
            if (site >= n) fail(path, lineno, "more than " + std::to_string(n) + " spins");
            int bit;
            if (token == 1) {
                bit = 1;
            } else if (token == 0) {
                if (encoding == 2) fail(path, lineno, "mixed 0/1 and +-1 encodings");
                encoding = 1;
                bit = 0;
            } else if (token == -1) {
                if (encoding == 1) fail(path, lineno, "mixed 0/1 and +-1 encodings");
                encoding = 2;
                bit = 0;
            } else {
                fail(path, lineno, "invalid spin token " + std::to_string(token));
            }
            index |= static_cast<std::uint32_t>(bit) << site;
            ++site;
        }
        if (!ss.eof()) fail(path, lineno, "non-numeric token");
        if (site != n)
            fail(path, lineno, "expected " + std::to_string(n) + " spins, got " +
                                   std::to_string(site));
        dist.add(index);
    }
    if (dist.total() == 0) throw std::runtime_error("ingest_samples: no samples in " + path);
    return dist;
}

void write_samples(const std::string& path, const EmpiricalDistribution& dist) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_samples: cannot write " + path);
    const int n = dist.n();
    for (const auto& [index, count] : dist.counts()) {
        std::string line;
        for (int i = 0; i < n; ++i) {
            if (i) line += ' ';
            line += ((index >> i) & 1u) ? "1" : "-1";
        }
        line += '\n';
        for (std::uint64_t k = 0; k < count; ++k) out << line;
    }
}

EmpiricalDistribution split_parallel_embeddings(
    const std::string& raw_path, const std::vector<Embedding>& embeddings, int n,
    const std::set<std::size_t>& excluded_embeddings) {
    if (embeddings.empty())
        throw std::invalid_argument("split_parallel_embeddings: no embeddings");

    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < embeddings.size(); ++i)
        if (!excluded_embeddings.count(i)) active.push_back(i);
    if (active.empty())
        throw std::invalid_argument("split_parallel_embeddings: all embeddings excluded");

    std::set<int> seen_columns;
    for (std::size_t i : active) {
        if (static_cast<int>(embeddings[i].map.size()) != n)
            throw std::invalid_argument("split_parallel_embeddings: embedding " +
                                        std::to_string(i) + " has wrong logical size");
        std::set<int> own(embeddings[i].map.begin(), embeddings[i].map.end());
        if (static_cast<int>(own.size()) != n)
            throw std::invalid_argument("split_parallel_embeddings: embedding " +
                                        std::to_string(i) + " is not injective");
        for (int col : own)
            if (!seen_columns.insert(col).second)
                throw std::invalid_argument(
                    "split_parallel_embeddings: embeddings share physical column " +
                    std::to_string(col));
    }

    std::ifstream in(raw_path);
    if (!in) throw std::runtime_error("split_parallel_embeddings: cannot open " + raw_path);

    std::string line;
    std::size_t lineno = 0;
    // header: physical column ids
    std::unordered_map<int, std::size_t> column_slot;
    {
        if (!std::getline(in, line))
            throw std::runtime_error("split_parallel_embeddings: empty file " + raw_path);
        ++lineno;
        std::istringstream ss(line);
        std::string cell;
        std::size_t slot = 0;
        while (std::getline(ss, cell, ',')) {
            try {
                column_slot[std::stoi(cell)] = slot++;
            } catch (const std::exception&) {
                fail(raw_path, lineno, "bad column id '" + cell + "'");
            }
        }
    }
    // precompute per-embedding slot lists
    std::vector<std::vector<std::size_t>> slots(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) {
        for (int logical = 0; logical < n; ++logical) {
            const int col = embeddings[active[k]].map[logical];
            auto it = column_slot.find(col);
            if (it == column_slot.end())
                throw std::runtime_error(
                    "split_parallel_embeddings: physical column " + std::to_string(col) +
                    " missing from " + raw_path);
            slots[k].push_back(it->second);
        }
    }

    EmpiricalDistribution dist(n);
    std::vector<int> row(column_slot.size());
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string cell;
        std::size_t slot = 0;
        while (std::getline(ss, cell, ',')) {
            if (slot >= row.size()) fail(raw_path, lineno, "row wider than header");
            int v;
            try {
                v = std::stoi(cell);
            } catch (const std::exception&) {
                fail(raw_path, lineno, "bad readout '" + cell + "'");
            }
            if (v != 1 && v != -1) fail(raw_path, lineno, "readout values must be +-1");
            row[slot++] = v;
        }
        if (slot != row.size()) fail(raw_path, lineno, "row narrower than header");
        for (const auto& embedding_slots : slots) {
            std::uint32_t index = 0;
            for (int logical = 0; logical < n; ++logical)
                if (row[embedding_slots[logical]] > 0) index |= std::uint32_t{1} << logical;
            dist.add(index);
        }
    }
    if (dist.total() == 0)
        throw std::runtime_error("split_parallel_embeddings: no data rows in " + raw_path);
    return dist;
}

}  // namespace annni
