#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "efg/bitseq.hpp"
#include "efg/efg.hpp"
#include "efg/fm_index.hpp"

namespace efg {

// Per-query instrumentation for the path listing search.
struct ListStats {
    idx_t tail_candidates = 0;  // largest |T| over chain starts
    idx_t head_candidates = 0;  // largest |H| over left-end resolutions
    idx_t expansions = 0;
    idx_t states = 0;
    bool short_branch = false;  // answered by plain occurrence enumeration only
};

// BWT-based index over
//   D'_F = 0 . prod_{v in last block} l(v) 0 . prod_{(v,w) in E} l(v) l(w) 0
// answering which of a predefined path set contains a pattern. Node ids of
// the graph are the varrho order (block-major, label-lexicographic).
class PathIndex {
public:
    static constexpr int32_t kSep = 1;
    static constexpr int32_t kSymBase = 2;

    Efg graph;
    std::vector<std::vector<idx_t>> paths; // node id sequences
    std::vector<std::string> path_names;

    std::vector<int32_t> d_f_prime; // with the final terminator 0
    BwtIndex fwd;                   // over d_f_prime
    BwtIndex rev;                   // over its reverse

    BitSeq b_marks, e_marks;          // lexicographic range starts/ends of B-set labels
    BitSeq d_marks;                   // singleton ranks of each l(v) l(w) 0
    std::vector<idx_t> block_numbers; // N: block of the r''-th B-label (lex order)
    std::vector<idx_t> rho_of_b;      // varrho of the r''-th B-label
    BitSeq block_heights;             // B: unary, 1 0^{H(1)} 1 0^{H(2)} ...
    std::vector<idx_t> a_ranks;       // A[alpha]: within-block rank of the left node
    std::vector<idx_t> at_ranks;      // A~[alpha~]: within-block rank of the right node
    std::vector<idx_t> delta_l;       // L[alpha~] = rho(w) - rho(v)
    std::vector<idx_t> delta_r;       // R[alpha]  = rho(w) - rho(v)
    BitSeq label_lengths;             // X: unary |l(v)| per B-node in rho order
    std::vector<idx_t> b_ord;         // lex rank of a B-label -> its rho-rank among B-nodes

    std::vector<uint64_t> path_sets; // U: per node, |paths| bits, node-major
    idx_t words_per_node = 0;

    std::vector<idx_t> label_len;     // per node
    std::vector<idx_t> pos_owner;     // text position -> node id, -1 on separators
    std::vector<idx_t> sep_bwt_ranks; // sorted ranks r with bwt[r] = separator
    std::array<int32_t, 256> char_code{};
    idx_t m_e = 0; // 2 + |last block| + |E|, the alpha~ key bound

    idx_t path_count() const { return static_cast<idx_t>(paths.size()); }

    // sorted path ids whose concatenated label contains the pattern
    std::vector<idx_t> list_paths(const std::string& pattern, ListStats* stats = nullptr) const;

    void save(std::ostream& os) const;
    static PathIndex load(std::istream& is);

private:
    idx_t cum_height_before(idx_t block) const;
    friend PathIndex build_path_index(const Efg& g, std::vector<std::vector<idx_t>> paths);
};

// Default paths (empty argument): one walk per alignment row. Rejects
// trivial graphs and paths that are not walks of the graph.
PathIndex build_path_index(const Efg& g, std::vector<std::vector<idx_t>> paths = {});

// Expanded backward search step: the enclosing B-label range of a
// lexicographic range, or nothing when no full label is a prefix of the
// matched string. Returns (range, B rank) on success.
struct ExpandResult {
    bool ok = false;
    RankRange range;
    idx_t b_rank = -1;
};
ExpandResult expand_range(const PathIndex& ix, RankRange range);

// Substring scan over concatenated path labels; ground truth.
std::vector<idx_t> naive_path_listing(const Efg& g, const std::vector<std::vector<idx_t>>& paths,
                                      const std::string& pattern);

} // namespace efg
