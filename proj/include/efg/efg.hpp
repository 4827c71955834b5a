#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "efg/msa.hpp"
#include "efg/segmentation.hpp"

namespace efg {

// Elastic founder graph: blocks of distinct labels, edges between
// consecutive blocks witnessed by rows. Node ids are assigned in block
// order and label-lexicographic within a block, so id order is the
// varrho order used by the path index.
struct Efg {
    struct Edge {
        idx_t from;
        idx_t to;
        std::vector<idx_t> rows; // witnessing rows, ascending
    };

    std::vector<std::vector<idx_t>> blocks; // block -> node ids
    std::vector<std::string> labels;        // node id -> label (non-empty)
    std::vector<idx_t> block_of;            // node id -> block index (0-based)
    std::vector<Edge> edges;                // sorted by (from, to)
    std::vector<std::vector<idx_t>> row_paths; // row -> node per block
    std::vector<std::string> row_names;
    idx_t msa_rows = 0;
    idx_t msa_cols = 0;

    idx_t node_count() const { return static_cast<idx_t>(labels.size()); }
    idx_t block_count() const { return static_cast<idx_t>(blocks.size()); }

    std::vector<std::vector<std::pair<idx_t, idx_t>>> out_adj() const; // (to, edge idx)
};

struct EfgStats {
    int64_t total_label_length = 0;  // N
    idx_t height = 0;                // H, max nodes in a block
    idx_t max_label_length = 0;      // L
    idx_t block_count = 0;           // b
    int64_t total_edge_label_length = 0;
};

Efg induce_efg(const Msa& msa, const Segmentation& seg);

// Definitional semi-repeat-free check on the graph: every label occurs in
// every path label only as a prefix of paths starting in its own block.
// Quadratic; this is the oracle side of the characterization.
bool validate_efg(const Efg& g);

EfgStats graph_stats(const Efg& g);

void write_efg(std::ostream& os, const Efg& g);
Efg read_efg(std::istream& is);
Efg read_efg_file(const std::string& path);

} // namespace efg
