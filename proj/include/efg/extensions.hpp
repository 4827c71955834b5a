#pragma once

#include <iosfwd>
#include <vector>

#include "efg/exclusive_ancestor.hpp"
#include "efg/msa.hpp"
#include "efg/suffix_tree.hpp"

namespace efg {

// f[x] for x in [0..n-1]: smallest y such that [x+1..y] is semi-repeat-free,
// n+1 when only the virtual terminator column works.
struct MinimalExtensions {
    std::vector<idx_t> f;
    idx_t n = 0;
    idx_t at(idx_t x) const { return f[x]; }
};

// One meaningful right extension: segment [x+1..r] has height h, and the
// height stays h up to column next_r (= r_{x,k+1} - 1, or n for the last).
struct ExtensionTriple {
    idx_t x;
    idx_t r;
    idx_t h;
    idx_t next_r;
};

MinimalExtensions minimal_right_extensions(const Msa& msa, const SuffixTreeIndex& gst);
// Same output; independent columns processed concurrently, leaf sets found
// by direct rank lookup instead of suffix-link evolution.
MinimalExtensions minimal_right_extensions_parallel(const Msa& msa, const SuffixTreeIndex& gst,
                                                    int threads = 0);

// All (x, r, H([x+1..r])) triples via the dynamic keyword tree, sorted by r.
std::vector<ExtensionTriple> meaningful_right_extensions(const Msa& msa,
                                                         const MinimalExtensions& f);
std::vector<ExtensionTriple> meaningful_right_extensions_parallel(const Msa& msa,
                                                                  const MinimalExtensions& f,
                                                                  int threads = 0);

// Prefix-aware variant: heights count only strings that are not proper
// prefixes of other strings of the block. At most m+1 triples per x.
std::vector<ExtensionTriple> prefix_aware_extensions(const Msa& msa, const MinimalExtensions& f,
                                                     const SuffixTreeIndex& gst,
                                                     const SuffixTreeIndex& gpt);
std::vector<ExtensionTriple> prefix_aware_extensions_parallel(const Msa& msa,
                                                              const MinimalExtensions& f,
                                                              const SuffixTreeIndex& gst,
                                                              const SuffixTreeIndex& gpt,
                                                              int threads = 0);

// Column of the longest run where one row spells a prefix of another,
// reported as a statistic (the keyword-tree early-stop horizon).
idx_t longest_prefix_run(const Msa& msa, const MinimalExtensions& f);

TreeView tree_view(const SuffixTreeIndex& st);

// "x \t r \t h \t next_r" per line, sorted by r.
void dump_extensions(std::ostream& os, const std::vector<ExtensionTriple>& triples);

} // namespace efg
