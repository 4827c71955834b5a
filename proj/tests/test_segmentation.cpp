#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "efg/oracles.hpp"
#include "efg/segmentation.hpp"
#include "efg/suffix_tree.hpp"

using namespace efg;

namespace {

struct Pipeline {
    Msa msa;
    SuffixTreeIndex gst, gpt;
    MinimalExtensions f;

    explicit Pipeline(Msa m)
        : msa(std::move(m)), gst(build_gst(msa)), gpt(build_gpt(msa)),
          f(minimal_right_extensions(msa, gst)) {}

    std::optional<Segmentation> run(Metric metric) const {
        switch (metric) {
        case Metric::MaxBlocks: return score_max_blocks(f);
        case Metric::MinMaxLength: return score_min_max_length(f);
        case Metric::MinMaxHeight:
            return score_min_max_height(meaningful_right_extensions(msa, f), msa.n(), msa.m(),
                                        Metric::MinMaxHeight);
        case Metric::MinMaxPaHeight:
            return score_min_max_height(prefix_aware_extensions(msa, f, gst, gpt), msa.n(),
                                        msa.m(), Metric::MinMaxPaHeight);
        }
        return std::nullopt;
    }
};

idx_t recompute_score(const Msa& msa, const Segmentation& seg) {
    std::vector<idx_t> h, hbar;
    idx_t score = 0;
    switch (seg.metric) {
    case Metric::MaxBlocks: return static_cast<idx_t>(seg.intervals.size());
    case Metric::MinMaxLength:
        for (const auto& iv : seg.intervals)
            score = std::max(score, iv.y - iv.x + 1);
        return score;
    case Metric::MinMaxHeight:
        for (const auto& iv : seg.intervals) {
            direct_heights(msa, iv.x - 1, h, hbar);
            score = std::max(score, h[iv.y]);
        }
        return score;
    case Metric::MinMaxPaHeight:
        for (const auto& iv : seg.intervals) {
            direct_heights(msa, iv.x - 1, h, hbar);
            score = std::max(score, hbar[iv.y]);
        }
        return score;
    }
    return score;
}

} // namespace

TEST_CASE("spec examples: max-blocks") {
    CHECK(Pipeline(Msa::from_strings({"ACGT"})).run(Metric::MaxBlocks)->score == 4);
    CHECK(Pipeline(Msa::from_strings({"AAAA"})).run(Metric::MaxBlocks)->score == 1);
    CHECK(Pipeline(Msa::from_strings({"AC", "GC"})).run(Metric::MaxBlocks)->score == 2);
}

TEST_CASE("spec examples: min-max-length") {
    CHECK(Pipeline(Msa::from_strings({"ACGT"})).run(Metric::MinMaxLength)->score == 1);
    CHECK(Pipeline(Msa::from_strings({"AAAA"})).run(Metric::MinMaxLength)->score == 4);
    auto naive = naive_optimal_segmentation(Msa::from_strings({"ABAB"}), Metric::MinMaxLength);
    auto fast = Pipeline(Msa::from_strings({"ABAB"})).run(Metric::MinMaxLength);
    REQUIRE(naive.has_value());
    REQUIRE(fast.has_value());
    CHECK(fast->score == *naive);
}

TEST_CASE("spec examples: min-max-height") {
    CHECK(Pipeline(Msa::from_strings({"AC", "GC"})).run(Metric::MinMaxHeight)->score == 2);
    CHECK(Pipeline(Msa::from_strings({"ACGT"})).run(Metric::MinMaxHeight)->score == 1);
    CHECK(Pipeline(Msa::from_strings({"AC", "AG"})).run(Metric::MinMaxHeight)->score == 2);
    CHECK(Pipeline(Msa::from_strings({"AC", "AG"})).run(Metric::MinMaxPaHeight)->score == 2);
    CHECK(*naive_optimal_segmentation(Msa::from_strings({"AAAA", "AAAA"}), Metric::MinMaxLength) ==
          4);
}

TEST_CASE("all four metrics equal the reference DP on random alignments") {
    const Metric metrics[] = {Metric::MaxBlocks, Metric::MinMaxLength, Metric::MinMaxHeight,
                              Metric::MinMaxPaHeight};
    int infeasible_seen = 0;
    for (uint64_t seed = 1; seed <= 250; ++seed) {
        for (double gp : {0.0, 0.15, 0.3}) {
            RandomMsaSpec spec;
            spec.seed = seed * 7919 + static_cast<uint64_t>(gp * 10);
            spec.gap_probability = gp;
            Msa msa = generate_msa(spec);
            Pipeline p(std::move(msa));
            for (Metric metric : metrics) {
                auto naive = naive_optimal_segmentation(p.msa, metric);
                auto fast = p.run(metric);
                REQUIRE(naive.has_value() == fast.has_value());
                if (!naive) {
                    ++infeasible_seen;
                    continue;
                }
                REQUIRE(fast->score == *naive);
                // the returned intervals really achieve the reported score
                CHECK(recompute_score(p.msa, *fast) == fast->score);
                idx_t expected = 1;
                for (const auto& iv : fast->intervals) {
                    CHECK(iv.x == expected);
                    CHECK(p.msa.is_segment_semi_repeat_free(iv));
                    expected = iv.y + 1;
                }
                CHECK(expected == p.msa.n() + 1);
            }
        }
    }
    CHECK(infeasible_seen > 0); // the corpus must cover the no-solution case
}

TEST_CASE("segmentation file round trip") {
    Pipeline p(Msa::from_strings({"ACCA", "AGCA"}));
    auto seg = p.run(Metric::MaxBlocks);
    REQUIRE(seg.has_value());
    std::stringstream ss;
    write_segmentation(ss, *seg, p.msa.m(), p.msa.n());
    auto back = read_segmentation(ss);
    CHECK(back.m == p.msa.m());
    CHECK(back.n == p.msa.n());
    CHECK(back.seg.score == seg->score);
    CHECK(back.seg.intervals.size() == seg->intervals.size());
}

TEST_CASE("segmentation file rejects bad input") {
    std::stringstream notseg("BOGUS 1 2 3");
    CHECK_THROWS_AS(read_segmentation(notseg), FormatError);
    std::stringstream gapped("SEG max-blocks 2 1 4\n1 2\n4 4\n");
    CHECK_THROWS_AS(read_segmentation(gapped), InvariantError);
}
