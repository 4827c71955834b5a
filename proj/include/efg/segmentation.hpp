#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "efg/extensions.hpp"
#include "efg/msa.hpp"

namespace efg {

enum class Metric { MaxBlocks, MinMaxLength, MinMaxHeight, MinMaxPaHeight };

const char* metric_name(Metric m);
std::optional<Metric> metric_from_name(const std::string& name);

// Contiguous cover of [1..n] whose every interval is semi-repeat-free,
// together with the metric it optimizes and the achieved score.
struct Segmentation {
    std::vector<SegmentInterval> intervals;
    Metric metric = Metric::MaxBlocks;
    idx_t score = 0;
};

// Maximize the number of blocks; empty result when no semi-repeat-free
// segmentation exists.
std::optional<Segmentation> score_max_blocks(const MinimalExtensions& f);

// Minimize the maximum segment length (leader/non-leader sweep).
std::optional<Segmentation> score_min_max_length(const MinimalExtensions& f);

// Minimize the maximum block height over a sorted meaningful-extension
// stream; works identically for exact and prefix-aware heights.
std::optional<Segmentation> score_min_max_height(const std::vector<ExtensionTriple>& triples,
                                                 idx_t n, idx_t m, Metric label);

// Quadratic reference DP straight from the recurrence, using the
// definitional segment check; ground truth for all fast solvers.
std::optional<idx_t> naive_optimal_segmentation(const Msa& msa, Metric metric);

// Definitional block heights of [x+1..y] for one start column x:
// heights[y] = H, pa_heights[y] = prefix-aware H.
void direct_heights(const Msa& msa, idx_t x, std::vector<idx_t>& heights,
                    std::vector<idx_t>& pa_heights);

void write_segmentation(std::ostream& os, const Segmentation& seg, idx_t m, idx_t n);
struct SegmentationFile {
    Segmentation seg;
    idx_t m = 0;
    idx_t n = 0;
};
SegmentationFile read_segmentation(std::istream& is);

} // namespace efg
