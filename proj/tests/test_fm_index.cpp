#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "efg/fm_index.hpp"

using namespace efg;

namespace {

std::vector<int32_t> random_text(std::mt19937_64& rng, idx_t max_len, int32_t sigma) {
    idx_t len = 1 + rng() % max_len;
    std::vector<int32_t> text(len + 1);
    for (idx_t i = 0; i < len; ++i)
        text[i] = 1 + rng() % (sigma - 1);
    text[len] = 0;
    return text;
}

idx_t naive_count(const std::vector<int32_t>& text, const std::vector<int32_t>& pat) {
    idx_t count = 0;
    if (pat.empty() || pat.size() > text.size())
        return 0;
    for (std::size_t p = 0; p + pat.size() <= text.size(); ++p)
        if (std::equal(pat.begin(), pat.end(), text.begin() + p))
            ++count;
    return count;
}

} // namespace

TEST_CASE("spec examples") {
    // text "AC0" with A=1, C=2
    BwtIndex ix({1, 2, 0}, 3);
    CHECK(ix.backward_search(ix.full_range(), 0).size() == 1);
    CHECK(ix.backward_search({0, -1}, 1).empty());
    auto r = ix.search({1, 2});
    CHECK(r.size() == 1);
    CHECK(ix.search({2, 1}).empty());
}

TEST_CASE("inversion and counts on random texts") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 100; ++round) {
        int32_t sigma = 2 + rng() % 4;
        auto text = random_text(rng, 200, sigma + 1);
        BwtIndex ix(text, sigma + 1);
        CHECK(ix.invert() == text);

        // all patterns of length <= 4
        std::vector<std::vector<int32_t>> pats;
        for (int32_t a = 1; a <= sigma; ++a) {
            pats.push_back({a});
            for (int32_t b = 1; b <= sigma; ++b) {
                pats.push_back({a, b});
                for (int32_t c = 1; c <= sigma; ++c) {
                    pats.push_back({a, b, c});
                    for (int32_t d = 1; d <= sigma; ++d)
                        pats.push_back({a, b, c, d});
                }
            }
        }
        for (const auto& p : pats)
            CHECK(ix.search(p).size() == naive_count(text, p));
    }
}

TEST_CASE("empty range stays empty and the full range matches everything") {
    BwtIndex ix({1, 1, 2, 1, 0}, 3);
    RankRange empty{3, 2};
    CHECK(ix.backward_search(empty, 1).empty());
    CHECK(ix.search({}).size() == ix.size());
}

TEST_CASE("locate maps ranks back to text positions") {
    std::mt19937_64 rng(55);
    for (int round = 0; round < 50; ++round) {
        auto text = random_text(rng, 120, 4);
        BwtIndex ix(text, 4);
        // every rank locates to a distinct valid position whose suffix sorts
        // at that rank
        std::vector<idx_t> pos_of(ix.size());
        for (idx_t r = 0; r < ix.size(); ++r)
            pos_of[r] = ix.locate(r);
        std::vector<idx_t> sorted = pos_of;
        std::sort(sorted.begin(), sorted.end());
        for (idx_t r = 0; r < ix.size(); ++r)
            CHECK(sorted[r] == r);
        for (idx_t r = 0; r + 1 < ix.size(); ++r) {
            // suffix at pos_of[r] is lexicographically before suffix at pos_of[r+1]
            CHECK(std::lexicographical_compare(text.begin() + pos_of[r], text.end(),
                                               text.begin() + pos_of[r + 1], text.end()));
        }
    }
}

TEST_CASE("persistence round trip") {
    std::mt19937_64 rng(7);
    auto text = random_text(rng, 100, 5);
    BwtIndex ix(text, 5);
    auto bytes = ix.to_bytes();
    auto back = BwtIndex::from_bytes(bytes);
    CHECK(back.text() == ix.text());
    CHECK(back.bwt() == ix.bwt());
}
