#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "efg/msa.hpp"

namespace efg {

// Suffix array by induced sorting over an integer alphabet.
// text values must lie in [0..sigma), text.back() must be the unique 0.
std::vector<idx_t> build_suffix_array(const std::vector<int32_t>& text, int32_t sigma);
std::vector<idx_t> build_lcp(const std::vector<int32_t>& text, const std::vector<idx_t>& sa);

// Generalized suffix tree over the gaps-removed rows of an MSA, built
// from the suffix array and LCP of the concatenation
//   spell(row 1) $_1 spell(row 2) $_2 ... spell(row m) $_m 0
// with per-row terminators $_1 < ... < $_m < Sigma. The compacted trie of
// this single text has the same branching structure as the trimmed
// generalized suffix tree because every terminator is unique.
class SuffixTreeIndex {
public:
    // topology; node 0 is the root
    std::vector<idx_t> parent;
    std::vector<idx_t> depth;          // string depth (leaves: to end of text)
    std::vector<idx_t> child_begin;    // [child_begin[v]..child_end[v]) indexes children_flat
    std::vector<idx_t> child_end;
    std::vector<idx_t> children_flat;  // children ordered by edge first symbol
    std::vector<idx_t> lml, rml;       // leftmost/rightmost covered leaf rank
    std::vector<int32_t> edge_first;   // first symbol of the edge into the node

    // leaves in lexicographic order
    std::vector<idx_t> leaf_node;      // leaf rank -> node id
    std::vector<idx_t> leaf_text_pos;  // leaf rank -> position in text (0-based)
    std::vector<idx_t> leaf_row;       // leaf rank -> row (1-based), 0 for the final terminator
    std::vector<idx_t> leaf_offset;    // leaf rank -> start in gaps-removed row (1-based, row_length+1 for $_i)

    std::vector<int32_t> text;         // the concatenation actually indexed
    std::vector<idx_t> rank_of_pos;    // text position -> leaf rank
    idx_t rows = 0;

    idx_t root() const { return 0; }
    idx_t node_count() const { return static_cast<idx_t>(parent.size()); }
    bool is_leaf(idx_t v) const { return child_begin[v] == child_end[v]; }
    idx_t leaf_count() const { return static_cast<idx_t>(leaf_node.size()); }

    // leaf rank of the suffix spell(row, pos..)$_row; pos may be row_length+1
    idx_t leaf_of(idx_t row, idx_t pos) const {
        return rank_of_pos[row_start_[row - 1] + pos - 1];
    }
    // leaf rank of the next suffix of the same text position + 1
    idx_t leaf_suffix_link(idx_t leaf_rank) const {
        return rank_of_pos[leaf_text_pos[leaf_rank] + 1];
    }

    // child of v whose edge starts with symbol c, or -1
    idx_t child_by_symbol(idx_t v, int32_t c) const;

    // deepest/shallowest explicit node on the root-to-leaf path subject to
    // a string-depth bound; O(log height) via binary lifting
    idx_t highest_with_depth_at_least(idx_t leaf_rank, idx_t target_depth) const;

    std::string node_string(idx_t v) const; // debugging / tests

    void build_lifting();

    idx_t row_start(idx_t row) const { return row_start_[row - 1]; }

    // topology persistence; the text is stored by the caller
    std::vector<uint8_t> to_bytes() const;
    static SuffixTreeIndex from_bytes(const std::vector<uint8_t>& bytes,
                                      const std::vector<int32_t>& text);

private:
    friend SuffixTreeIndex build_suffix_tree(std::vector<int32_t>, int32_t);
    friend SuffixTreeIndex build_tree_from_rows(const std::vector<std::vector<uint8_t>>&, idx_t);

    std::vector<idx_t> row_start_;     // 0-based text offset of each row's region
    std::vector<std::vector<idx_t>> up_; // binary lifting table
};

// Compacted suffix tree of an arbitrary terminated integer text; leaf
// row/offset bookkeeping is left zeroed.
SuffixTreeIndex build_suffix_tree(std::vector<int32_t> text, int32_t sigma);

SuffixTreeIndex build_gst(const Msa& msa);
// Generalized prefix tree: the suffix tree of the reversed gaps-removed rows.
SuffixTreeIndex build_gpt(const Msa& msa);

// GPT node for string(parent(v)) . char(v) of GST node v, read right to
// left: the explicit node hosting that locus (itself when the locus is
// explicit, otherwise the first explicit node below it on the same path).
idx_t map_to_reverse(idx_t gst_node, const SuffixTreeIndex& gst, const SuffixTreeIndex& gpt,
                     const Msa& msa);

// First ending column, per MSA row semantics, of every explicit GPT node:
// for a leaf of row i at reverse-offset p this is the column of the
// (row_length - p + 1)-th non-gap symbol; internal nodes take the minimum
// over children. Terminator-only leaves get n+1.
std::vector<idx_t> compute_pos_inverse(const SuffixTreeIndex& gpt, const Msa& msa);

} // namespace efg
