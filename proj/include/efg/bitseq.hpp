#pragma once

#include <cstdint>
#include <vector>

namespace efg {

// Plain bit sequence with O(1) rank and select over precomputed directories.
// Directories are rebuilt with finalize() after the bits are filled in.
class BitSeq {
public:
    BitSeq() = default;
    explicit BitSeq(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    void set(std::size_t i) { words_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    // Number of set bits in positions [0..i), so rank1(size()) is the total.
    std::size_t rank1(std::size_t i) const;
    std::size_t rank0(std::size_t i) const { return i - rank1(i); }

    // Position of the j-th set bit, 1-based j; returns size() if out of range.
    std::size_t select1(std::size_t j) const;
    std::size_t ones() const { return total_ones_; }

    void finalize();

private:
    std::size_t n_ = 0;
    std::vector<uint64_t> words_;
    std::vector<uint32_t> rank_blocks_; // cumulative ones before each word
    std::size_t total_ones_ = 0;
};

} // namespace efg
