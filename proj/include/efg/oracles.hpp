#pragma once

#include <cstdint>
#include <random>

#include "efg/exclusive_ancestor.hpp"
#include "efg/msa.hpp"

namespace efg {

// Random-instance recipe shared by the property suites. Identical spec and
// seed always produce the same alignment.
struct RandomMsaSpec {
    idx_t m_min = 1, m_max = 5;
    idx_t n_min = 1, n_max = 12;
    idx_t sigma_min = 2, sigma_max = 3;
    double gap_probability = 0.15;
    uint64_t seed = 1;
    // interleaved-gap rows whose spells stay prefixes of one another, so
    // that the exact-height extension count grows linearly in n
    bool pathological_mode = false;
};

Msa generate_msa(const RandomMsaSpec& spec);

// f(x) by the definitional quadratic scan; values in [x+1..n+1].
std::vector<idx_t> naive_minimal_extensions(const Msa& msa);

// Unique minimal antichain by per-leaf ascent with explicit leaf-set
// checks; quadratic, independent of the linear-time solver.
std::vector<idx_t> brute_force_exclusive_ancestors(const TreeView& t,
                                                   const std::vector<idx_t>& leaf_ranks);

// Random compacted rooted tree (every internal node has >= 2 children).
struct RandomTree {
    std::vector<idx_t> parent, lml, rml, leaf_node;
    idx_t leaves = 0;
    TreeView view() const {
        return TreeView{parent.data(), lml.data(), rml.data(), leaf_node.data(),
                        static_cast<idx_t>(parent.size()), leaves};
    }
};
RandomTree generate_tree(std::mt19937_64& rng, idx_t max_leaves);

} // namespace efg
