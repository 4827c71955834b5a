#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "efg/bitseq.hpp"

using efg::BitSeq;

TEST_CASE("rank/select agree with a naive scan") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 20; ++round) {
        std::size_t n = 1 + rng() % 700;
        BitSeq b(n);
        std::vector<bool> ref(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rng() % 3 == 0) {
                b.set(i);
                ref[i] = true;
            }
        }
        b.finalize();
        std::size_t ones = 0;
        for (std::size_t i = 0; i <= n; ++i) {
            CHECK(b.rank1(i) == ones);
            CHECK(b.rank0(i) + b.rank1(i) == i);
            if (i < n && ref[i]) {
                ++ones;
                CHECK(b.select1(ones) == i);
            }
        }
        CHECK(b.ones() == ones);
        CHECK(b.select1(0) == n);
        CHECK(b.select1(ones + 1) == n);
    }
}

TEST_CASE("select1 of rank1 stays left of the query point") {
    BitSeq b(100);
    for (std::size_t i = 0; i < 100; i += 7)
        b.set(i);
    b.finalize();
    for (std::size_t i = 1; i <= 100; ++i) {
        auto r = b.rank1(i);
        if (r > 0)
            CHECK(b.select1(r) <= i - 1);
    }
}
