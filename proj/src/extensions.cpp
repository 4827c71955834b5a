#include "efg/extensions.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

#ifdef EFG_HAVE_OPENMP
#include <omp.h>
#endif

namespace efg {

TreeView tree_view(const SuffixTreeIndex& st) {
    return TreeView{st.parent.data(), st.lml.data(),      st.rml.data(),
                    st.leaf_node.data(), st.node_count(), st.leaf_count()};
}

std::vector<idx_t> exclusive_ancestor_set(const TreeView& t, const std::vector<idx_t>& leaf_ranks,
                                          LeafMarks& marks) {
    std::vector<idx_t> out;
    exclusive_ancestors(t, leaf_ranks, marks, [&](idx_t w, idx_t, idx_t) { out.push_back(w); });
    return out;
}

namespace {

// One column of Algorithm 3: f(x) = max over rows of the first column where
// the row's shortest exclusive prefix ends.
idx_t fx_from_leaves(const Msa& msa, const SuffixTreeIndex& gst, const TreeView& tv,
                     const std::vector<idx_t>& leaf_ranks, LeafMarks& marks, idx_t x) {
    idx_t fx = 0;
    exclusive_ancestors(tv, leaf_ranks, marks, [&](idx_t w, idx_t lo, idx_t hi) {
        const idx_t g = gst.depth[gst.parent[w]] + 1;
        for (idx_t r = lo; r <= hi; ++r) {
            const idx_t row = gst.leaf_row[r];
            fx = std::max(fx, msa.select(row, msa.rank(row, x) + g));
        }
    });
    return fx;
}

} // namespace

MinimalExtensions minimal_right_extensions(const Msa& msa, const SuffixTreeIndex& gst) {
    const idx_t m = msa.m(), n = msa.n();
    MinimalExtensions out;
    out.n = n;
    out.f.assign(n, 0);
    const TreeView tv = tree_view(gst);
    LeafMarks marks(gst.leaf_count());
    std::vector<idx_t> leaves(m);
    for (idx_t i = 1; i <= m; ++i)
        leaves[i - 1] = gst.leaf_of(i, 1);
    for (idx_t x = 0; x < n; ++x) {
        out.f[x] = fx_from_leaves(msa, gst, tv, leaves, marks, x);
        for (idx_t i = 1; i <= m; ++i)
            if (!msa.is_gap(i, x + 1))
                leaves[i - 1] = gst.leaf_suffix_link(leaves[i - 1]);
    }
    return out;
}

MinimalExtensions minimal_right_extensions_parallel(const Msa& msa, const SuffixTreeIndex& gst,
                                                    int threads) {
    const idx_t m = msa.m(), n = msa.n();
    MinimalExtensions out;
    out.n = n;
    out.f.assign(n, 0);
    const TreeView tv = tree_view(gst);
#ifdef EFG_HAVE_OPENMP
    if (threads <= 0)
        threads = omp_get_max_threads();
#pragma omp parallel num_threads(threads)
    {
        LeafMarks marks(gst.leaf_count());
        std::vector<idx_t> leaves(m);
#pragma omp for schedule(static)
        for (idx_t x = 0; x < n; ++x) {
            for (idx_t i = 1; i <= m; ++i)
                leaves[i - 1] = gst.leaf_of(i, msa.rank(i, x) + 1);
            out.f[x] = fx_from_leaves(msa, gst, tv, leaves, marks, x);
        }
    }
#else
    (void)threads;
    LeafMarks marks(gst.leaf_count());
    std::vector<idx_t> leaves(m);
    for (idx_t x = 0; x < n; ++x) {
        for (idx_t i = 1; i <= m; ++i)
            leaves[i - 1] = gst.leaf_of(i, msa.rank(i, x) + 1);
        out.f[x] = fx_from_leaves(msa, gst, tv, leaves, marks, x);
    }
#endif
    return out;
}

namespace {

// Dynamic keyword tree for Algorithm 4. Children are kept sorted per node.
struct KeywordTree {
    struct Node {
        std::vector<std::pair<uint8_t, idx_t>> kids;
        idx_t count = 0;
    };
    std::vector<Node> nodes;
    idx_t structural_leaves = 0;

    void reset(idx_t row_count) {
        nodes.clear();
        nodes.push_back(Node{{}, row_count});
        structural_leaves = 1;
    }

    idx_t step(idx_t from, uint8_t sym) {
        auto& kids = nodes[from].kids;
        auto it = std::lower_bound(kids.begin(), kids.end(), sym,
                                   [](const auto& p, uint8_t s) { return p.first < s; });
        if (it != kids.end() && it->first == sym)
            return it->second;
        if (kids.empty())
            --structural_leaves; // the node stops being a leaf
        idx_t id = static_cast<idx_t>(nodes.size());
        kids.insert(it, {sym, id});
        nodes.push_back(Node{});
        ++structural_leaves;
        return id;
    }
};

// Core of Algorithm 4 for one start column; emits (r, h) pairs.
template <typename Emit>
void keyword_scan(const Msa& msa, idx_t x, idx_t fx, KeywordTree& kt, std::vector<idx_t>& cur,
                  Emit&& emit) {
    const idx_t m = msa.m(), n = msa.n();
    kt.reset(m);
    cur.assign(m, 0);
    idx_t h = 0;
    if (kt.structural_leaves == m) { // single row: height is 1 throughout
        emit(fx, 1);
        return;
    }
    for (idx_t r = x + 1; r <= n; ++r) {
        const idx_t h_before = h;
        for (idx_t i = 1; i <= m; ++i) {
            const uint8_t sym = msa.at(i, r);
            if (sym == Msa::kGap)
                continue;
            idx_t& node = cur[i - 1];
            if (node != 0) {
                if (--kt.nodes[node].count == 0)
                    --h;
            } else {
                --kt.nodes[0].count;
            }
            node = kt.step(node, sym);
            if (kt.nodes[node].count == 0)
                ++h;
            ++kt.nodes[node].count;
        }
        if (r == fx)
            emit(r, h);
        else if (r > fx && h != h_before)
            emit(r, h);
        if (kt.structural_leaves == m) {
            if (r < fx)
                emit(fx, m); // height stays m from here on
            break;
        }
    }
}

void fill_next_r(std::vector<ExtensionTriple>& per_x, idx_t n) {
    for (std::size_t k = 0; k < per_x.size(); ++k)
        per_x[k].next_r = (k + 1 < per_x.size()) ? per_x[k + 1].r - 1 : n;
}

std::vector<ExtensionTriple> merge_sorted_by_r(std::vector<std::vector<ExtensionTriple>>& per_x,
                                               idx_t n) {
    std::vector<std::size_t> count(n + 2, 0);
    std::size_t total = 0;
    for (auto& v : per_x) {
        for (const auto& t : v)
            ++count[t.r];
        total += v.size();
    }
    std::vector<std::size_t> offset(n + 2, 0);
    for (idx_t r = 1; r <= n; ++r)
        offset[r + 1] = offset[r] + count[r];
    std::vector<ExtensionTriple> out(total);
    std::vector<std::size_t> cursor(offset.begin(), offset.end());
    for (auto& v : per_x)
        for (const auto& t : v)
            out[cursor[t.r]++] = t;
    return out;
}

} // namespace

std::vector<ExtensionTriple> meaningful_right_extensions(const Msa& msa,
                                                         const MinimalExtensions& f) {
    const idx_t n = msa.n();
    std::vector<std::vector<ExtensionTriple>> per_x(n);
    KeywordTree kt;
    std::vector<idx_t> cur;
    for (idx_t x = 0; x < n; ++x) {
        if (f.f[x] > n)
            continue;
        keyword_scan(msa, x, f.f[x], kt, cur,
                     [&](idx_t r, idx_t h) { per_x[x].push_back({x, r, h, n}); });
        fill_next_r(per_x[x], n);
    }
    return merge_sorted_by_r(per_x, n);
}

std::vector<ExtensionTriple> meaningful_right_extensions_parallel(const Msa& msa,
                                                                  const MinimalExtensions& f,
                                                                  int threads) {
#ifdef EFG_HAVE_OPENMP
    const idx_t n = msa.n();
    std::vector<std::vector<ExtensionTriple>> per_x(n);
    if (threads <= 0)
        threads = omp_get_max_threads();
#pragma omp parallel num_threads(threads)
    {
        KeywordTree kt;
        std::vector<idx_t> cur;
#pragma omp for schedule(dynamic, 16)
        for (idx_t x = 0; x < n; ++x) {
            if (f.f[x] > n)
                continue;
            keyword_scan(msa, x, f.f[x], kt, cur,
                         [&](idx_t r, idx_t h) { per_x[x].push_back({x, r, h, n}); });
            fill_next_r(per_x[x], n);
        }
    }
    return merge_sorted_by_r(per_x, n);
#else
    (void)threads;
    return meaningful_right_extensions(msa, f);
#endif
}

namespace {

// Scratch for one prefix-aware column: the forest under the exclusive
// ancestors, pos values, and first-born marks.
struct PaScratch {
    LeafMarks marks;
    std::vector<idx_t> leaves;
    std::vector<idx_t> forest;    // node ids, parents before children
    std::vector<idx_t> node_pos;  // parallel to forest
    std::vector<char> first_born; // parallel to forest
    std::vector<idx_t> slot_of;   // node id -> forest slot + 1
    std::vector<idx_t> touched;
    std::vector<idx_t> values;

    explicit PaScratch(const SuffixTreeIndex& gst)
        : marks(gst.leaf_count()), slot_of(gst.node_count(), 0) {}
};

void prefix_aware_column(const Msa& msa, const SuffixTreeIndex& gst, const SuffixTreeIndex& gpt,
                         const std::vector<idx_t>& pos_inv, idx_t x, idx_t fx, PaScratch& s,
                         std::vector<ExtensionTriple>& out) {
    const idx_t m = msa.m(), n = msa.n();
    const TreeView tv = tree_view(gst);

    s.forest.clear();
    exclusive_ancestors(tv, s.leaves, s.marks, [&](idx_t w, idx_t, idx_t) {
        std::size_t head = s.forest.size();
        s.forest.push_back(w);
        while (head < s.forest.size()) {
            idx_t v = s.forest[head++];
            for (idx_t ci = gst.child_begin[v]; ci < gst.child_end[v]; ++ci)
                s.forest.push_back(gst.children_flat[ci]);
        }
    });

    s.node_pos.assign(s.forest.size(), n + 1);
    s.first_born.assign(s.forest.size(), 0);
    for (idx_t t : s.touched)
        s.slot_of[t] = 0;
    s.touched.clear();
    for (std::size_t k = 0; k < s.forest.size(); ++k) {
        s.slot_of[s.forest[k]] = static_cast<idx_t>(k) + 1;
        s.touched.push_back(s.forest[k]);
    }

    for (std::size_t k = 0; k < s.forest.size(); ++k) {
        const idx_t v = s.forest[k];
        if (gst.edge_first[v] <= m)
            continue; // edge starts with a row terminator: completes only at column n+1
        s.node_pos[k] = pos_inv[map_to_reverse(v, gst, gpt, msa)];
    }

    // one first-born child per internal forest node: minimal pos, ties to
    // the smallest leftmost-leaf rank
    for (std::size_t k = 0; k < s.forest.size(); ++k) {
        const idx_t v = s.forest[k];
        if (gst.is_leaf(v))
            continue;
        idx_t best = -1, best_pos = 0, best_lml = 0;
        for (idx_t ci = gst.child_begin[v]; ci < gst.child_end[v]; ++ci) {
            const idx_t c = gst.children_flat[ci];
            const idx_t slot = s.slot_of[c] - 1;
            const idx_t p = s.node_pos[slot];
            if (best < 0 || p < best_pos || (p == best_pos && gst.lml[c] < best_lml)) {
                best = slot;
                best_pos = p;
                best_lml = gst.lml[c];
            }
        }
        s.first_born[best] = 1;
    }

    s.values.clear();
    for (std::size_t k = 0; k < s.forest.size(); ++k)
        if (!s.first_born[k])
            s.values.push_back(s.node_pos[k]);
    assert(static_cast<idx_t>(s.values.size()) == m);
    std::sort(s.values.begin(), s.values.end());

    // the first triple always lands on f(x); later triples at each distinct
    // completion column carry the cumulative count
    const auto& ps = s.values;
    const std::size_t base = out.size();
    idx_t cnt = static_cast<idx_t>(std::upper_bound(ps.begin(), ps.end(), fx) - ps.begin());
    assert(cnt >= 1);
    out.push_back({x, fx, cnt, n});
    std::size_t k = cnt;
    while (k < ps.size() && ps[k] <= n) {
        std::size_t kk = k;
        while (kk + 1 < ps.size() && ps[kk + 1] == ps[k])
            ++kk;
        out.push_back({x, ps[k], static_cast<idx_t>(kk) + 1, n});
        k = kk + 1;
    }
    for (std::size_t t = base; t < out.size(); ++t)
        out[t].next_r = (t + 1 < out.size()) ? out[t + 1].r - 1 : n;
}

} // namespace

std::vector<ExtensionTriple> prefix_aware_extensions(const Msa& msa, const MinimalExtensions& f,
                                                     const SuffixTreeIndex& gst,
                                                     const SuffixTreeIndex& gpt) {
    const idx_t m = msa.m(), n = msa.n();
    const auto pos_inv = compute_pos_inverse(gpt, msa);
    std::vector<std::vector<ExtensionTriple>> per_x(n);
    PaScratch s(gst);
    s.leaves.resize(m);
    for (idx_t i = 1; i <= m; ++i)
        s.leaves[i - 1] = gst.leaf_of(i, 1);
    for (idx_t x = 0; x < n; ++x) {
        if (f.f[x] <= n)
            prefix_aware_column(msa, gst, gpt, pos_inv, x, f.f[x], s, per_x[x]);
        for (idx_t i = 1; i <= m; ++i)
            if (!msa.is_gap(i, x + 1))
                s.leaves[i - 1] = gst.leaf_suffix_link(s.leaves[i - 1]);
    }
    return merge_sorted_by_r(per_x, n);
}

std::vector<ExtensionTriple> prefix_aware_extensions_parallel(const Msa& msa,
                                                              const MinimalExtensions& f,
                                                              const SuffixTreeIndex& gst,
                                                              const SuffixTreeIndex& gpt,
                                                              int threads) {
#ifdef EFG_HAVE_OPENMP
    const idx_t m = msa.m(), n = msa.n();
    const auto pos_inv = compute_pos_inverse(gpt, msa);
    std::vector<std::vector<ExtensionTriple>> per_x(n);
    if (threads <= 0)
        threads = omp_get_max_threads();
#pragma omp parallel num_threads(threads)
    {
        PaScratch s(gst);
        s.leaves.resize(m);
#pragma omp for schedule(dynamic, 16)
        for (idx_t x = 0; x < n; ++x) {
            if (f.f[x] > n)
                continue;
            for (idx_t i = 1; i <= m; ++i)
                s.leaves[i - 1] = gst.leaf_of(i, msa.rank(i, x) + 1);
            prefix_aware_column(msa, gst, gpt, pos_inv, x, f.f[x], s, per_x[x]);
        }
    }
    return merge_sorted_by_r(per_x, n);
#else
    (void)threads;
    return prefix_aware_extensions(msa, f, gst, gpt);
#endif
}

idx_t longest_prefix_run(const Msa& msa, const MinimalExtensions&) {
    const idx_t n = msa.n();
    idx_t alpha = 0;
    KeywordTree kt;
    std::vector<idx_t> cur;
    for (idx_t x = 0; x < n; ++x) {
        // first column from which no two row spells are one prefix of the other
        idx_t stop = n + 1;
        kt.reset(msa.m());
        cur.assign(msa.m(), 0);
        for (idx_t r = x + 1; r <= n + 1; ++r) {
            if (kt.structural_leaves == msa.m()) {
                stop = r;
                break;
            }
            if (r > n)
                break;
            for (idx_t i = 1; i <= msa.m(); ++i) {
                const uint8_t sym = msa.at(i, r);
                if (sym == Msa::kGap)
                    continue;
                idx_t& node = cur[i - 1];
                if (node == 0)
                    --kt.nodes[0].count;
                node = kt.step(node, sym);
                ++kt.nodes[node].count;
            }
        }
        alpha = std::max(alpha, stop - 1 - x);
    }
    return alpha;
}

void dump_extensions(std::ostream& os, const std::vector<ExtensionTriple>& triples) {
    for (const auto& t : triples)
        os << t.x << '\t' << t.r << '\t' << t.h << '\t' << t.next_r << '\n';
}

} // namespace efg
