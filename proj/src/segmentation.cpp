#include "efg/segmentation.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <string>

namespace efg {

namespace {
constexpr idx_t kInf = INT32_MAX / 2;
}

const char* metric_name(Metric m) {
    switch (m) {
    case Metric::MaxBlocks: return "max-blocks";
    case Metric::MinMaxLength: return "min-max-length";
    case Metric::MinMaxHeight: return "min-max-height";
    case Metric::MinMaxPaHeight: return "min-max-pa-height";
    }
    return "?";
}

std::optional<Metric> metric_from_name(const std::string& name) {
    if (name == "max-blocks" || name == "blocks")
        return Metric::MaxBlocks;
    if (name == "min-max-length" || name == "maxlen")
        return Metric::MinMaxLength;
    if (name == "min-max-height" || name == "height")
        return Metric::MinMaxHeight;
    if (name == "min-max-pa-height" || name == "pa-height")
        return Metric::MinMaxPaHeight;
    return std::nullopt;
}

namespace {

std::vector<SegmentInterval> backtrack_intervals(const std::vector<idx_t>& back, idx_t n) {
    std::vector<SegmentInterval> intervals;
    idx_t j = n;
    while (j > 0) {
        idx_t x = back[j];
        assert(0 <= x && x < j);
        intervals.push_back({x + 1, j});
        j = x;
    }
    std::reverse(intervals.begin(), intervals.end());
    return intervals;
}

} // namespace

std::optional<Segmentation> score_max_blocks(const MinimalExtensions& f) {
    const idx_t n = f.n;
    // release x when j reaches f(x)
    std::vector<std::vector<idx_t>> release(n + 1);
    for (idx_t x = 0; x < n; ++x)
        if (f.f[x] <= n)
            release[f.f[x]].push_back(x);

    std::vector<idx_t> s(n + 1, -kInf), back(n + 1, -1);
    s[0] = 0;
    idx_t best = -kInf, best_x = -1;
    for (idx_t j = 1; j <= n; ++j) {
        for (idx_t x : release[j]) {
            if (s[x] != -kInf && (best == -kInf || s[x] > best)) {
                best = s[x];
                best_x = x;
            }
        }
        if (best != -kInf) {
            s[j] = best + 1;
            back[j] = best_x;
        }
    }
    if (s[n] == -kInf)
        return std::nullopt;
    Segmentation seg;
    seg.metric = Metric::MaxBlocks;
    seg.score = s[n];
    seg.intervals = backtrack_intervals(back, n);
    return seg;
}

std::optional<Segmentation> score_min_max_length(const MinimalExtensions& f) {
    const idx_t n = f.n;
    std::vector<std::vector<idx_t>> release(n + 1);
    for (idx_t x = 0; x < n; ++x)
        if (f.f[x] <= n)
            release[f.f[x]].push_back(x);

    std::vector<idx_t> s(n + 1, kInf), back(n + 1, -1);
    s[0] = 0;
    std::vector<idx_t> C(n + 2, 0);
    std::vector<std::vector<idx_t>> pending(n + 2); // x migrating at column x+s(x)+1
    std::vector<char> nonleader(n + 1, 0);
    // per-score candidates for backtracking, largest x preferred
    std::vector<std::priority_queue<idx_t>> cand(n + 2);
    idx_t K = 1;
    idx_t S = kInf, back_S = -1;

    auto update_S = [&](idx_t v, idx_t x) {
        if (v < S || (v == S && x > back_S)) {
            S = v;
            back_S = x;
        }
    };

    for (idx_t j = 1; j <= n; ++j) {
        for (idx_t x : release[j]) {
            if (s[x] == kInf)
                continue; // no segmentation of the prefix ends at x
            if (j <= x + s[x]) {
                ++C[s[x]];
                K = std::min(K, s[x]);
                nonleader[x] = 1;
                cand[s[x]].push(x);
                if (x + s[x] + 1 <= n)
                    pending[x + s[x] + 1].push_back(x);
            } else {
                update_S(j - x, x);
            }
        }
        for (idx_t x : pending[j]) {
            --C[s[x]];
            nonleader[x] = 0;
            update_S(j - x, x); // j - x = s(x) + 1
        }

        if (C[K] > 0) {
            if (K <= S) {
                s[j] = K;
                auto& pq = cand[K];
                while (!pq.empty() && !nonleader[pq.top()])
                    pq.pop();
                assert(!pq.empty());
                back[j] = pq.top();
            } else {
                s[j] = S;
                back[j] = back_S;
            }
        } else if (S != kInf) {
            s[j] = S;
            back[j] = back_S;
        }

        if (S != kInf)
            ++S;
        if (C[K] == 0)
            ++K;
    }
    if (s[n] == kInf)
        return std::nullopt;
    Segmentation seg;
    seg.metric = Metric::MinMaxLength;
    seg.score = s[n];
    seg.intervals = backtrack_intervals(back, n);
    return seg;
}

std::optional<Segmentation> score_min_max_height(const std::vector<ExtensionTriple>& triples,
                                                 idx_t n, idx_t m, Metric label) {
    std::vector<idx_t> s(n + 1, kInf), back(n + 1, -1);
    s[0] = 0;
    std::vector<idx_t> R(n, -1);      // current score of x's active range, -1 = none
    std::vector<idx_t> XR(n, -1);     // current range end of x
    std::vector<idx_t> C(m + 2, 0);
    // per-score candidates (next_r, x); the paper prefers maximum r_{x,k+1}
    std::vector<std::priority_queue<std::pair<idx_t, idx_t>>> cand(m + 2);

    std::size_t y = 0;
    for (idx_t j = 1; j <= n; ++j) {
        while (y < triples.size() && triples[y].r == j) {
            const auto& t = triples[y];
            ++y;
            if (s[t.x] == kInf)
                continue;
            if (R[t.x] >= 0)
                --C[R[t.x]]; // the previous range of R_x expires here
            idx_t sc = std::max(s[t.x], t.h);
            R[t.x] = sc;
            XR[t.x] = t.next_r;
            if (sc <= m) {
                ++C[sc];
                cand[sc].push({t.next_r, t.x});
            }
        }
        idx_t bestv = kInf;
        for (idx_t i = 1; i <= m; ++i) {
            if (C[i] > 0) {
                bestv = i;
                break;
            }
        }
        if (bestv != kInf) {
            s[j] = bestv;
            auto& pq = cand[bestv];
            while (!pq.empty()) {
                auto [nr, x] = pq.top();
                if (R[x] == bestv && XR[x] == nr && nr >= j)
                    break;
                pq.pop();
            }
            assert(!pq.empty());
            back[j] = pq.top().second;
        }
    }
    if (s[n] == kInf)
        return std::nullopt;
    Segmentation seg;
    seg.metric = label;
    seg.score = s[n];
    seg.intervals = backtrack_intervals(back, n);
    return seg;
}

void direct_heights(const Msa& msa, idx_t x, std::vector<idx_t>& heights,
                    std::vector<idx_t>& pa_heights) {
    const idx_t n = msa.n(), m = msa.m();
    heights.assign(n + 1, 0);
    pa_heights.assign(n + 1, 0);
    for (idx_t y = x + 1; y <= n; ++y) {
        std::set<std::vector<uint8_t>> spells;
        for (idx_t i = 1; i <= m; ++i)
            spells.insert(msa.spell_codes(i, x + 1, y));
        heights[y] = static_cast<idx_t>(spells.size());
        idx_t pa = 0;
        for (const auto& s : spells) {
            bool proper_prefix = false;
            for (const auto& t : spells) {
                if (&s == &t || s.size() >= t.size())
                    continue;
                if (std::equal(s.begin(), s.end(), t.begin()))
                    proper_prefix = true;
            }
            if (!proper_prefix)
                ++pa;
        }
        pa_heights[y] = pa;
    }
}

std::optional<idx_t> naive_optimal_segmentation(const Msa& msa, Metric metric) {
    const idx_t n = msa.n();
    const bool maximize = (metric == Metric::MaxBlocks);
    std::vector<idx_t> s(n + 1, maximize ? -kInf : kInf);
    s[0] = 0;

    std::vector<std::vector<idx_t>> H, Hbar;
    if (metric == Metric::MinMaxHeight || metric == Metric::MinMaxPaHeight) {
        H.resize(n);
        Hbar.resize(n);
        for (idx_t x = 0; x < n; ++x)
            direct_heights(msa, x, H[x], Hbar[x]);
    }

    for (idx_t j = 1; j <= n; ++j) {
        for (idx_t x = 0; x < j; ++x) {
            if (maximize ? s[x] == -kInf : s[x] == kInf)
                continue;
            if (!msa.is_segment_semi_repeat_free({x + 1, j}))
                continue;
            idx_t v;
            switch (metric) {
            case Metric::MaxBlocks: v = s[x] + 1; break;
            case Metric::MinMaxLength: v = std::max(s[x], j - x); break;
            case Metric::MinMaxHeight: v = std::max(s[x], H[x][j]); break;
            case Metric::MinMaxPaHeight: v = std::max(s[x], Hbar[x][j]); break;
            }
            if (maximize ? v > s[j] : v < s[j])
                s[j] = v;
        }
    }
    if (maximize ? s[n] == -kInf : s[n] == kInf)
        return std::nullopt;
    return s[n];
}

void write_segmentation(std::ostream& os, const Segmentation& seg, idx_t m, idx_t n) {
    os << "SEG " << metric_name(seg.metric) << ' ' << seg.score << ' ' << m << ' ' << n << '\n';
    for (const auto& iv : seg.intervals)
        os << iv.x << ' ' << iv.y << '\n';
}

SegmentationFile read_segmentation(std::istream& is) {
    std::string magic, metric;
    SegmentationFile out;
    if (!(is >> magic) || magic != "SEG")
        throw FormatError("not a segmentation file (missing SEG magic)");
    if (!(is >> metric >> out.seg.score >> out.m >> out.n))
        throw FormatError("malformed segmentation header");
    auto mt = metric_from_name(metric);
    if (!mt)
        throw FormatError("unknown segmentation metric: " + metric);
    out.seg.metric = *mt;
    idx_t x, y;
    while (is >> x >> y)
        out.seg.intervals.push_back({x, y});
    if (out.seg.intervals.empty())
        throw FormatError("segmentation has no intervals");
    idx_t expected = 1;
    for (const auto& iv : out.seg.intervals) {
        if (iv.x != expected || iv.y < iv.x)
            throw InvariantError("segmentation intervals do not tile [1..n]");
        expected = iv.y + 1;
    }
    if (expected != out.n + 1)
        throw InvariantError("segmentation does not end at column n");
    return out;
}

} // namespace efg
