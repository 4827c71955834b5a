#include "efg/fm_index.hpp"

#include <cassert>

#include "efg/io_util.hpp"
#include "efg/suffix_tree.hpp"

namespace efg {

BwtIndex::BwtIndex(std::vector<int32_t> text, int32_t sigma) : text_(std::move(text)), sigma_(sigma) {
    if (text_.empty() || text_.back() != 0)
        throw InvariantError("BWT input must end with the unique terminator 0");
    auto sa = build_suffix_array(text_, sigma_);
    const idx_t n = static_cast<idx_t>(sa.size());
    bwt_.resize(n);
    sampled_ = BitSeq(n);
    for (idx_t r = 0; r < n; ++r) {
        idx_t p = sa[r];
        bwt_[r] = p == 0 ? text_[n - 1] : text_[p - 1];
        if (p % kSampleRate == 0)
            sampled_.set(r);
    }
    sampled_.finalize();
    sample_vals_.resize(sampled_.ones());
    for (idx_t r = 0; r < n; ++r)
        if (sa[r] % kSampleRate == 0)
            sample_vals_[sampled_.rank1(r)] = sa[r];
    build_directories();
}

void BwtIndex::build_directories() {
    const idx_t n = size();
    std::vector<idx_t> freq(sigma_, 0);
    for (int32_t c : bwt_)
        ++freq[c];
    counts_.assign(sigma_ + 1, 0); // counts_[c] = number of symbols smaller than c
    for (int32_t c = 1; c <= sigma_; ++c)
        counts_[c] = counts_[c - 1] + freq[c - 1];

    const idx_t blocks = n / kOccStep + 1;
    occ_.assign(sigma_, std::vector<idx_t>(blocks, 0));
    std::vector<idx_t> running(sigma_, 0);
    for (idx_t r = 0; r < n; ++r) {
        if (r % kOccStep == 0)
            for (int32_t c = 0; c < sigma_; ++c)
                occ_[c][r / kOccStep] = running[c];
        ++running[bwt_[r]];
    }
    if (n % kOccStep == 0)
        for (int32_t c = 0; c < sigma_; ++c)
            occ_[c][blocks - 1] = running[c];
}

idx_t BwtIndex::occ(int32_t c, idx_t r) const {
    idx_t block = r / kOccStep;
    if (block >= static_cast<idx_t>(occ_[c].size()))
        block = static_cast<idx_t>(occ_[c].size()) - 1;
    idx_t count = occ_[c][block];
    for (idx_t k = block * kOccStep; k < r; ++k)
        if (bwt_[k] == c)
            ++count;
    return count;
}

RankRange BwtIndex::backward_search(RankRange range, int32_t c) const {
    if (range.empty() || c < 0 || c >= sigma_)
        return {0, -1};
    idx_t lo = counts_[c] + occ(c, range.lo);
    idx_t hi = counts_[c] + occ(c, range.hi + 1) - 1;
    return {lo, hi};
}

RankRange BwtIndex::search(const std::vector<int32_t>& pattern) const {
    RankRange range = full_range();
    for (auto it = pattern.rbegin(); it != pattern.rend() && !range.empty(); ++it)
        range = backward_search(range, *it);
    return range;
}

idx_t BwtIndex::locate(idx_t r) const {
    idx_t steps = 0;
    while (!sampled_.get(r)) {
        int32_t c = bwt_[r];
        r = counts_[c] + occ(c, r); // LF step
        ++steps;
    }
    return sample_vals_[sampled_.rank1(r)] + steps;
}

std::vector<int32_t> BwtIndex::invert() const {
    const idx_t n = size();
    std::vector<int32_t> out(n);
    // the rank-0 suffix is the terminator itself; LF steps walk the text
    // one position to the left per iteration
    idx_t r = 0, pos = n - 1;
    out[pos] = 0;
    for (idx_t k = 1; k < n; ++k) {
        int32_t c = bwt_[r];
        out[--pos] = c;
        r = counts_[c] + occ(c, r);
    }
    return out;
}

std::vector<uint8_t> BwtIndex::to_bytes() const {
    std::vector<uint8_t> out;
    put_u64(out, static_cast<uint64_t>(sigma_));
    put_i32_vec(out, text_);
    return out;
}

BwtIndex BwtIndex::from_bytes(const std::vector<uint8_t>& bytes) {
    ByteCursor c{&bytes};
    int32_t sigma = static_cast<int32_t>(c.u64());
    return BwtIndex(c.i32_vec(), sigma);
}

} // namespace efg
