#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "efg/msa.hpp"

using namespace efg;

namespace {
Msa make(const std::vector<std::string>& rows) { return Msa::from_strings(rows); }
}

TEST_CASE("parse_msa basic") {
    std::istringstream in(">a\nAC-G\n>b\nA-CG\n");
    Msa msa = parse_msa(in);
    CHECK(msa.m() == 2);
    CHECK(msa.n() == 4);
    CHECK(msa.sigma() == 3);
    CHECK(msa.row_name(1) == "a");
    CHECK(msa.spell(1, 1, 4) == "ACG");
}

TEST_CASE("parse_msa single row") {
    std::istringstream in(">s\nACGT\n");
    Msa msa = parse_msa(in);
    CHECK(msa.m() == 1);
    CHECK(msa.n() == 4);
}

TEST_CASE("parse_msa error cases") {
    std::istringstream all_gaps(">a\n----\n");
    CHECK_THROWS_AS(parse_msa(all_gaps), FormatError);
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_msa(empty), FormatError);
    std::istringstream uneven(">a\nACG\n>b\nAC\n");
    CHECK_THROWS_AS(parse_msa(uneven), FormatError);
}

TEST_CASE("spell") {
    Msa msa = make({"AC-G"});
    CHECK(msa.spell(1, 1, 4) == "ACG");
    CHECK(msa.spell(1, 3, 3) == "");
    CHECK(msa.spell(1, 4, 3) == ""); // x = y+1 convention
    Msa msa2 = make({"A-CG"});
    CHECK(msa2.spell(1, 2, 4) == "CG");
}

TEST_CASE("gap_position") {
    Msa a = make({"AC-G"});
    CHECK(a.gap_position(1, 4) == 3);
    Msa b = make({"ACGT"});
    CHECK(b.gap_position(1, 3) == 3);
    Msa c = make({"--AG"});
    CHECK(c.gap_position(1, 3) == 1);
}

TEST_CASE("gap_position equals 1 + |spell(1..x-1)| on random alignments") {
    std::mt19937_64 rng(11);
    const char syms[] = "ABC-";
    for (int round = 0; round < 50; ++round) {
        int m = 1 + rng() % 4, n = 1 + rng() % 12;
        std::vector<std::string> rows;
        for (int i = 0; i < m; ++i) {
            std::string r;
            bool nongap = false;
            for (int j = 0; j < n; ++j) {
                char c = syms[rng() % 4];
                nongap |= (c != '-');
                r.push_back(c);
            }
            if (!nongap)
                r[rng() % n] = 'A';
            rows.push_back(r);
        }
        Msa msa = make(rows);
        for (idx_t i = 1; i <= msa.m(); ++i)
            for (idx_t x = 1; x <= msa.n(); ++x)
                CHECK(msa.gap_position(i, x) ==
                      1 + static_cast<idx_t>(msa.spell(i, 1, x - 1).size()));
    }
}

TEST_CASE("spell concatenation property") {
    Msa msa = make({"A-CG-T", "AC--GT"});
    for (idx_t i = 1; i <= 2; ++i)
        for (idx_t x = 1; x <= 6; ++x)
            for (idx_t y = x - 1; y <= 6; ++y)
                for (idx_t z = y + 1; z <= 6; ++z)
                    CHECK(msa.spell(i, x, y) + msa.spell(i, y + 1, z) == msa.spell(i, x, z));
}

TEST_CASE("is_segment_semi_repeat_free examples") {
    CHECK(make({"AC", "GC"}).is_segment_semi_repeat_free({1, 1}));
    CHECK_FALSE(make({"AAAA"}).is_segment_semi_repeat_free({1, 2}));
    // spell of row 1 over [3..3] is empty
    CHECK_FALSE(make({"AC-G", "A-CG"}).is_segment_semi_repeat_free({3, 3}));
}

TEST_CASE("select and terminator column") {
    Msa msa = make({"A-CG"});
    CHECK(msa.select(1, 1) == 1);
    CHECK(msa.select(1, 2) == 3);
    CHECK(msa.select(1, 3) == 4);
    CHECK(msa.select(1, 4) == 5); // virtual terminator column n+1
    CHECK_THROWS_AS(msa.select(1, 5), InvariantError);
}
