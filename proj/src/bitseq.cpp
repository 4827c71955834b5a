#include "efg/bitseq.hpp"

#include <bit>
#include <cassert>

namespace efg {

void BitSeq::finalize() {
    rank_blocks_.assign(words_.size() + 1, 0);
    uint32_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        rank_blocks_[w] = acc;
        acc += std::popcount(words_[w]);
    }
    rank_blocks_[words_.size()] = acc;
    total_ones_ = acc;
}

std::size_t BitSeq::rank1(std::size_t i) const {
    assert(i <= n_);
    std::size_t w = i >> 6;
    std::size_t r = rank_blocks_[w];
    std::size_t rem = i & 63;
    if (rem)
        r += std::popcount(words_[w] & ((uint64_t{1} << rem) - 1));
    return r;
}

std::size_t BitSeq::select1(std::size_t j) const {
    if (j == 0 || j > total_ones_) return n_;
    // binary search on the rank directory, then scan within the word
    std::size_t lo = 0, hi = words_.size();
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (rank_blocks_[mid] < j)
            lo = mid;
        else
            hi = mid;
    }
    uint64_t word = words_[lo];
    std::size_t need = j - rank_blocks_[lo];
    std::size_t pos = lo << 6;
    while (true) {
        assert(word != 0);
        int tz = std::countr_zero(word);
        if (--need == 0) return pos + tz;
        word &= word - 1;
    }
}

} // namespace efg
