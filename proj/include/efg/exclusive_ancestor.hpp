#pragma once

#include <vector>

#include "efg/msa.hpp"

namespace efg {

// Minimal rooted-tree interface for the exclusive ancestor set solver.
// Leaves are addressed by their rank in the ordered traversal.
struct TreeView {
    const idx_t* parent;
    const idx_t* lml;
    const idx_t* rml;
    const idx_t* leaf_node; // leaf rank -> node id
    idx_t nodes;
    idx_t leaves;
};

// Reusable scratch so that consecutive instances cost O(|L|) each.
class LeafMarks {
public:
    explicit LeafMarks(idx_t leaves) : stamp_(leaves, 0) {}
    void begin_instance() { ++epoch_; }
    void mark(idx_t leaf_rank) { stamp_[leaf_rank] = epoch_; }
    bool marked(idx_t leaf_rank) const {
        return leaf_rank >= 0 && leaf_rank < static_cast<idx_t>(stamp_.size()) &&
               stamp_[leaf_rank] == epoch_;
    }

private:
    std::vector<uint32_t> stamp_;
    uint32_t epoch_ = 0;
};

// Solves one instance: W covers all of L and nothing else, minimal.
// Leaves of L are given as ranks; marks must be fresh for this instance.
// emit(node, leaf_lo, leaf_hi) is called once per exclusive ancestor with
// the covered leaf rank range.
template <typename Emit>
void exclusive_ancestors(const TreeView& t, const std::vector<idx_t>& leaf_ranks,
                         LeafMarks& marks, Emit&& emit) {
    if (leaf_ranks.empty())
        throw InvariantError("exclusive ancestor set: empty leaf set");
    if (static_cast<idx_t>(leaf_ranks.size()) >= t.leaves)
        throw InvariantError("exclusive ancestor set: leaf set must be proper");
    marks.begin_instance();
    for (idx_t r : leaf_ranks)
        marks.mark(r);
    for (idx_t r : leaf_ranks) {
        if (marks.marked(r - 1))
            continue; // not the left boundary of its contiguous run
        idx_t lb = r, rb = r;
        while (rb + 1 < t.leaves && marks.marked(rb + 1))
            ++rb;
        idx_t cur = t.leaf_node[lb];
        idx_t lo = lb, hi = lb;
        while (true) {
            idx_t up = t.parent[cur];
            if (up >= 0 && lb <= t.lml[up] && t.rml[up] <= rb) {
                cur = up;
                lo = t.lml[up];
                hi = t.rml[up];
                continue;
            }
            emit(cur, lo, hi);
            if (hi + 1 > rb)
                break;
            lo = hi = hi + 1;
            cur = t.leaf_node[lo];
        }
    }
}

// Convenience wrapper returning the node set.
std::vector<idx_t> exclusive_ancestor_set(const TreeView& t, const std::vector<idx_t>& leaf_ranks,
                                          LeafMarks& marks);

} // namespace efg
