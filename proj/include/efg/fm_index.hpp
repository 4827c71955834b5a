#pragma once

#include <cstdint>
#include <vector>

#include "efg/bitseq.hpp"
#include "efg/msa.hpp"

namespace efg {

// Lexicographic range of suffixes, [lo..hi] inclusive; empty when hi < lo.
struct RankRange {
    idx_t lo = 0;
    idx_t hi = -1;
    bool empty() const { return hi < lo; }
    idx_t size() const { return empty() ? 0 : hi - lo + 1; }
};

// Plain FM-index over an integer text ending with its unique smallest
// symbol 0: BWT, checkpointed symbol ranks, cumulative counts, and a
// sampled suffix array for locating.
class BwtIndex {
public:
    static constexpr idx_t kSampleRate = 8;

    BwtIndex() = default;
    BwtIndex(std::vector<int32_t> text, int32_t sigma);

    idx_t size() const { return static_cast<idx_t>(bwt_.size()); }
    int32_t sigma() const { return sigma_; }
    const std::vector<int32_t>& text() const { return text_; }
    const std::vector<int32_t>& bwt() const { return bwt_; }

    int32_t bwt_at(idx_t r) const { return bwt_[r]; }
    RankRange full_range() const { return {0, size() - 1}; }

    // occurrences of c in bwt[0..r)
    idx_t occ(int32_t c, idx_t r) const;
    // number of text symbols smaller than c
    idx_t count_before(int32_t c) const { return counts_[c]; }

    RankRange backward_search(RankRange range, int32_t c) const;
    RankRange search(const std::vector<int32_t>& pattern) const;

    // text position of the suffix with lexicographic rank r
    idx_t locate(idx_t r) const;
    // reverse the transform; reproduces the text
    std::vector<int32_t> invert() const;

    std::vector<uint8_t> to_bytes() const;
    static BwtIndex from_bytes(const std::vector<uint8_t>& bytes);

private:
    void build_directories();

    std::vector<int32_t> text_;
    std::vector<int32_t> bwt_;
    int32_t sigma_ = 0;
    std::vector<idx_t> counts_;           // cumulative symbol counts
    std::vector<std::vector<idx_t>> occ_; // checkpoints every kOccStep rows
    BitSeq sampled_;                      // ranks whose position is a multiple of kSampleRate
    std::vector<idx_t> sample_vals_;      // positions of the sampled ranks
    static constexpr idx_t kOccStep = 64;
};

} // namespace efg
