#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include "efg/bitseq.hpp"
#include "efg/efg.hpp"
#include "efg/suffix_tree.hpp"

namespace efg {

// Per-query counters: which match-span case answered, and how much work
// the search did (suffix-tree steps, in units of one-symbol descents).
struct QueryStats {
    bool matched = false;
    int span_case = 0;          // 1: <= 2 nodes, 2: exactly 3, 3: >= 4
    bool rejected_no_boundary = false;
    bool rejected_no_full_label = false;
    long steps = 0;
};

// Pattern-membership index over the edge strings of a semi-repeat-free
// EFG: suffix trees of
//   D_F = prod ell(v) ell(w) 0      over edges
//   D_R = prod (ell(v) ell(w))^-1 0 $^{|ell(v)|} 0
// plus full-label marks and per-position edge attribution.
class EfgIndex {
public:
    static constexpr int32_t kSep = 1;
    static constexpr int32_t kDollar = 2;
    static constexpr int32_t kSymBase = 3;

    Efg graph;
    std::vector<int32_t> d_f, d_r; // both end with the unique terminator 0
    SuffixTreeIndex st_f, st_r;
    std::vector<idx_t> edge_of_r;        // d_r position -> edge id (-1 outside)
    std::vector<idx_t> min_left_label;   // st_r node -> min |ell(v)| among covered edge suffixes
    BitSeq region_start_leaf_r;          // st_r leaf ranks at region starts
    std::array<int32_t, 256> char_code{}; // 0 when absent, else >= kSymBase

    bool query(const std::string& pattern, QueryStats* stats = nullptr) const;

    void save(std::ostream& os) const;
    static EfgIndex load(std::istream& is);

private:
    void build_derived(); // fills everything after graph/d_f/d_r are set
    friend EfgIndex build_efg_index(const Efg& g);
};

// Rejects graphs that are not semi-repeat-free and trivial (single-block)
// graphs, which have no edges to index.
EfgIndex build_efg_index(const Efg& g);

// DFS ground truth: does the pattern occur as a substring of some path
// label of the graph?
bool naive_graph_match(const Efg& g, const std::string& pattern);

} // namespace efg
