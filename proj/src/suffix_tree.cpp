#include "efg/suffix_tree.hpp"

#include <algorithm>
#include <cassert>

#include "efg/io_util.hpp"

namespace efg {

namespace {

// SA-IS. s[n-1] must be the unique smallest symbol (0).
void sais(const int32_t* s, idx_t* sa, idx_t n, int32_t sigma) {
    if (n == 1) {
        sa[0] = 0;
        return;
    }
    std::vector<bool> is_s(n);
    is_s[n - 1] = true;
    for (idx_t i = n - 2; i >= 0; --i)
        is_s[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && is_s[i + 1]);
    auto is_lms = [&](idx_t i) { return i > 0 && is_s[i] && !is_s[i - 1]; };

    std::vector<idx_t> bkt(sigma + 1, 0);
    for (idx_t i = 0; i < n; ++i)
        bkt[s[i] + 1]++;
    for (int32_t c = 0; c < sigma; ++c)
        bkt[c + 1] += bkt[c];

    std::vector<idx_t> head(sigma), tail(sigma);
    auto induce = [&](const std::vector<idx_t>& lms) {
        std::fill(sa, sa + n, -1);
        std::copy(bkt.begin() + 1, bkt.end(), tail.begin());
        for (idx_t k = static_cast<idx_t>(lms.size()) - 1; k >= 0; --k)
            sa[--tail[s[lms[k]]]] = lms[k];
        std::copy(bkt.begin(), bkt.end() - 1, head.begin());
        for (idx_t k = 0; k < n; ++k) {
            idx_t i = sa[k];
            if (i > 0 && !is_s[i - 1])
                sa[head[s[i - 1]]++] = i - 1;
        }
        std::copy(bkt.begin() + 1, bkt.end(), tail.begin());
        for (idx_t k = n - 1; k >= 0; --k) {
            idx_t i = sa[k];
            if (i > 0 && is_s[i - 1])
                sa[--tail[s[i - 1]]] = i - 1;
        }
    };

    std::vector<idx_t> lms_text_order;
    for (idx_t i = 1; i < n; ++i)
        if (is_lms(i))
            lms_text_order.push_back(i);

    induce(lms_text_order);

    std::vector<idx_t> sorted_lms;
    sorted_lms.reserve(lms_text_order.size());
    for (idx_t k = 0; k < n; ++k)
        if (sa[k] > 0 && is_lms(sa[k]))
            sorted_lms.push_back(sa[k]);

    // name LMS substrings
    std::vector<idx_t> name_of(n, -1);
    idx_t names = 0;
    idx_t prev = -1;
    for (idx_t pos : sorted_lms) {
        if (prev >= 0) {
            bool same = true;
            for (idx_t d = 0;; ++d) {
                if (s[prev + d] != s[pos + d]) {
                    same = false;
                    break;
                }
                if (d > 0 && (is_lms(prev + d) || is_lms(pos + d))) {
                    same = is_lms(prev + d) && is_lms(pos + d);
                    break;
                }
            }
            if (!same)
                ++names;
        }
        name_of[pos] = names;
        prev = pos;
    }

    const idx_t nl = static_cast<idx_t>(sorted_lms.size());
    if (names + 1 < nl) {
        std::vector<int32_t> reduced(lms_text_order.size());
        for (std::size_t k = 0; k < lms_text_order.size(); ++k)
            reduced[k] = name_of[lms_text_order[k]];
        std::vector<idx_t> sa1(reduced.size());
        sais(reduced.data(), sa1.data(), static_cast<idx_t>(reduced.size()), names + 1);
        std::vector<idx_t> ordered(reduced.size());
        for (std::size_t k = 0; k < reduced.size(); ++k)
            ordered[k] = lms_text_order[sa1[k]];
        induce(ordered);
    } else {
        induce(sorted_lms);
    }
}

} // namespace

std::vector<idx_t> build_suffix_array(const std::vector<int32_t>& text, int32_t sigma) {
    assert(!text.empty() && text.back() == 0);
    std::vector<idx_t> sa(text.size());
    sais(text.data(), sa.data(), static_cast<idx_t>(text.size()), sigma);
    return sa;
}

std::vector<idx_t> build_lcp(const std::vector<int32_t>& text, const std::vector<idx_t>& sa) {
    const idx_t n = static_cast<idx_t>(text.size());
    std::vector<idx_t> rank(n), lcp(n, 0);
    for (idx_t k = 0; k < n; ++k)
        rank[sa[k]] = k;
    idx_t h = 0;
    for (idx_t i = 0; i < n; ++i) {
        if (rank[i] > 0) {
            idx_t j = sa[rank[i] - 1];
            while (i + h < n && j + h < n && text[i + h] == text[j + h])
                ++h;
            lcp[rank[i]] = h;
            if (h > 0)
                --h;
        } else {
            h = 0;
        }
    }
    return lcp;
}

namespace {

struct TreeBuilder {
    std::vector<idx_t> parent, depth;
    std::vector<std::vector<idx_t>> kids;

    idx_t add(idx_t p, idx_t d) {
        parent.push_back(p);
        depth.push_back(d);
        kids.emplace_back();
        if (p >= 0)
            kids[p].push_back(static_cast<idx_t>(parent.size()) - 1);
        return static_cast<idx_t>(parent.size()) - 1;
    }
};

} // namespace

SuffixTreeIndex build_suffix_tree(std::vector<int32_t> text, int32_t sigma) {
    SuffixTreeIndex st;
    st.text = std::move(text);

    const idx_t n = static_cast<idx_t>(st.text.size());
    auto sa = build_suffix_array(st.text, sigma);
    auto lcp = build_lcp(st.text, sa);

    TreeBuilder tb;
    tb.add(-1, 0); // root
    std::vector<idx_t> stack{0};
    st.leaf_node.resize(n);
    st.leaf_text_pos.resize(n);
    st.leaf_row.resize(n);
    st.leaf_offset.resize(n);
    st.rank_of_pos.resize(n);

    for (idx_t k = 0; k < n; ++k) {
        idx_t d = (k == 0) ? 0 : lcp[k];
        idx_t last_popped = -1;
        while (tb.depth[stack.back()] > d) {
            last_popped = stack.back();
            stack.pop_back();
        }
        idx_t attach;
        if (tb.depth[stack.back()] == d) {
            attach = stack.back();
        } else {
            // split: new internal node between stack top and the popped child
            idx_t p = stack.back();
            idx_t u = tb.add(p, d);
            assert(last_popped >= 0 && tb.kids[p].size() >= 2);
            tb.kids[p].pop_back();          // u goes where last_popped was
            tb.kids[p].back() = u;
            tb.kids[u].push_back(last_popped);
            tb.parent[last_popped] = u;
            stack.push_back(u);
            attach = u;
        }
        idx_t leaf = tb.add(attach, n - sa[k]);
        stack.push_back(leaf);
        st.leaf_node[k] = leaf;
        st.leaf_text_pos[k] = sa[k];
        st.rank_of_pos[sa[k]] = k;
    }

    const idx_t nodes = static_cast<idx_t>(tb.parent.size());
    st.parent = std::move(tb.parent);
    st.depth = std::move(tb.depth);

    // flatten children, compute leaf ranges and edge symbols
    st.child_begin.assign(nodes, 0);
    st.child_end.assign(nodes, 0);
    st.children_flat.reserve(nodes - 1);
    for (idx_t v = 0; v < nodes; ++v) {
        st.child_begin[v] = static_cast<idx_t>(st.children_flat.size());
        for (idx_t c : tb.kids[v])
            st.children_flat.push_back(c);
        st.child_end[v] = static_cast<idx_t>(st.children_flat.size());
    }

    st.lml.assign(nodes, -1);
    st.rml.assign(nodes, -1);
    for (idx_t k = 0; k < n; ++k) {
        st.lml[st.leaf_node[k]] = k;
        st.rml[st.leaf_node[k]] = k;
    }
    // bottom-up over an explicit DFS order; creation ids are not topological
    {
        std::vector<idx_t> dfs{0};
        std::vector<idx_t> out;
        out.reserve(nodes);
        while (!dfs.empty()) {
            idx_t v = dfs.back();
            dfs.pop_back();
            out.push_back(v);
            for (idx_t ci = st.child_begin[v]; ci < st.child_end[v]; ++ci)
                dfs.push_back(st.children_flat[ci]);
        }
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            idx_t v = *it;
            if (st.is_leaf(v))
                continue;
            st.lml[v] = st.lml[st.children_flat[st.child_begin[v]]];
            st.rml[v] = st.rml[st.children_flat[st.child_end[v] - 1]];
        }
    }

    st.edge_first.assign(nodes, -1);
    for (idx_t v = 1; v < nodes; ++v)
        st.edge_first[v] = st.text[st.leaf_text_pos[st.lml[v]] + st.depth[st.parent[v]]];

    st.build_lifting();
    return st;
}

SuffixTreeIndex build_tree_from_rows(const std::vector<std::vector<uint8_t>>& rows, idx_t sigma) {
    const idx_t m = static_cast<idx_t>(rows.size());
    // codes: 0 terminator, 1..m row sentinels, m+1..m+sigma symbols
    std::vector<idx_t> row_start(m);
    std::vector<int32_t> text;
    idx_t total = 1;
    for (const auto& r : rows)
        total += static_cast<idx_t>(r.size()) + 1;
    text.reserve(total);
    for (idx_t i = 0; i < m; ++i) {
        row_start[i] = static_cast<idx_t>(text.size());
        for (uint8_t c : rows[i])
            text.push_back(m + c);
        text.push_back(i + 1);
    }
    text.push_back(0);

    SuffixTreeIndex st = build_suffix_tree(std::move(text), m + sigma + 1);
    st.rows = m;
    st.row_start_ = std::move(row_start);
    for (idx_t i = 0; i < m; ++i) {
        idx_t len = static_cast<idx_t>(rows[i].size());
        for (idx_t k = 0; k <= len; ++k) {
            idx_t rank = st.rank_of_pos[st.row_start_[i] + k];
            st.leaf_row[rank] = i + 1;
            st.leaf_offset[rank] = k + 1;
        }
    }
    return st;
}

SuffixTreeIndex build_gst(const Msa& msa) {
    std::vector<std::vector<uint8_t>> rows;
    rows.reserve(msa.m());
    for (idx_t i = 1; i <= msa.m(); ++i)
        rows.push_back(msa.row_codes(i));
    return build_tree_from_rows(rows, msa.sigma());
}

SuffixTreeIndex build_gpt(const Msa& msa) {
    std::vector<std::vector<uint8_t>> rows;
    rows.reserve(msa.m());
    for (idx_t i = 1; i <= msa.m(); ++i) {
        auto r = msa.row_codes(i);
        std::reverse(r.begin(), r.end());
        rows.push_back(std::move(r));
    }
    return build_tree_from_rows(rows, msa.sigma());
}

idx_t SuffixTreeIndex::child_by_symbol(idx_t v, int32_t c) const {
    idx_t lo = child_begin[v], hi = child_end[v];
    while (lo < hi) {
        idx_t mid = (lo + hi) / 2;
        idx_t ch = children_flat[mid];
        if (edge_first[ch] == c)
            return ch;
        if (edge_first[ch] < c)
            lo = mid + 1;
        else
            hi = mid;
    }
    return -1;
}

void SuffixTreeIndex::build_lifting() {
    const idx_t nodes = node_count();
    int levels = 1;
    while ((idx_t{1} << levels) < nodes)
        ++levels;
    up_.assign(levels, std::vector<idx_t>(nodes));
    for (idx_t v = 0; v < nodes; ++v)
        up_[0][v] = parent[v] < 0 ? 0 : parent[v];
    for (int k = 1; k < levels; ++k)
        for (idx_t v = 0; v < nodes; ++v)
            up_[k][v] = up_[k - 1][up_[k - 1][v]];
}

idx_t SuffixTreeIndex::highest_with_depth_at_least(idx_t leaf_rank, idx_t target_depth) const {
    idx_t cur = leaf_node[leaf_rank];
    assert(depth[cur] >= target_depth && target_depth >= 1);
    for (int k = static_cast<int>(up_.size()) - 1; k >= 0; --k) {
        idx_t anc = up_[k][cur];
        if (depth[anc] >= target_depth)
            cur = anc;
    }
    return cur;
}

std::string SuffixTreeIndex::node_string(idx_t v) const {
    std::string out;
    idx_t start = leaf_text_pos[lml[v]];
    for (idx_t d = 0; d < depth[v]; ++d) {
        int32_t c = text[start + d];
        if (c == 0)
            out += '#';
        else if (c <= rows)
            out += '$';
        else
            out += static_cast<char>('a' + c - rows - 1);
    }
    return out;
}

idx_t map_to_reverse(idx_t gst_node, const SuffixTreeIndex& gst, const SuffixTreeIndex& gpt,
                     const Msa& msa) {
    assert(gst_node != gst.root());
    const idx_t dp = gst.depth[gst.parent[gst_node]];
    const idx_t wit = gst.lml[gst_node];
    const idx_t row = gst.leaf_row[wit];
    const idx_t z = gst.leaf_offset[wit];
    const idx_t len = msa.row_length(row);
    assert(row >= 1 && z + dp <= len);
    const idx_t rev_pos = len - z - dp + 1;
    const idx_t gpt_leaf = gpt.leaf_of(row, rev_pos);
    return gpt.highest_with_depth_at_least(gpt_leaf, dp + 1);
}

std::vector<uint8_t> SuffixTreeIndex::to_bytes() const {
    std::vector<uint8_t> out;
    put_u64(out, static_cast<uint64_t>(rows));
    put_i32_vec(out, parent);
    put_i32_vec(out, depth);
    put_i32_vec(out, child_begin);
    put_i32_vec(out, child_end);
    put_i32_vec(out, children_flat);
    put_i32_vec(out, lml);
    put_i32_vec(out, rml);
    put_i32_vec(out, edge_first);
    put_i32_vec(out, leaf_node);
    put_i32_vec(out, leaf_text_pos);
    put_i32_vec(out, leaf_row);
    put_i32_vec(out, leaf_offset);
    put_i32_vec(out, rank_of_pos);
    put_i32_vec(out, row_start_);
    return out;
}

SuffixTreeIndex SuffixTreeIndex::from_bytes(const std::vector<uint8_t>& bytes,
                                            const std::vector<int32_t>& text) {
    SuffixTreeIndex st;
    ByteCursor c{&bytes};
    st.rows = static_cast<idx_t>(c.u64());
    st.parent = c.i32_vec();
    st.depth = c.i32_vec();
    st.child_begin = c.i32_vec();
    st.child_end = c.i32_vec();
    st.children_flat = c.i32_vec();
    st.lml = c.i32_vec();
    st.rml = c.i32_vec();
    st.edge_first = c.i32_vec();
    st.leaf_node = c.i32_vec();
    st.leaf_text_pos = c.i32_vec();
    st.leaf_row = c.i32_vec();
    st.leaf_offset = c.i32_vec();
    st.rank_of_pos = c.i32_vec();
    st.row_start_ = c.i32_vec();
    st.text = text;
    if (st.parent.empty() || st.leaf_node.size() != text.size())
        throw FormatError("suffix tree section does not match its text");
    st.build_lifting();
    return st;
}

std::vector<idx_t> compute_pos_inverse(const SuffixTreeIndex& gpt, const Msa& msa) {
    const idx_t sentinel = msa.n() + 1;
    std::vector<idx_t> pos_inv(gpt.node_count(), sentinel);
    for (idx_t k = 0; k < gpt.leaf_count(); ++k) {
        idx_t row = gpt.leaf_row[k];
        if (row == 0)
            continue;
        idx_t p = gpt.leaf_offset[k];
        idx_t len = msa.row_length(row);
        if (p > len)
            continue; // terminator-only leaf
        pos_inv[gpt.leaf_node[k]] = msa.select(row, len - p + 1);
    }
    // children have been created after their final parent only for leaves;
    // use an explicit bottom-up order
    std::vector<idx_t> dfs{0}, out;
    out.reserve(gpt.node_count());
    while (!dfs.empty()) {
        idx_t v = dfs.back();
        dfs.pop_back();
        out.push_back(v);
        for (idx_t ci = gpt.child_begin[v]; ci < gpt.child_end[v]; ++ci)
            dfs.push_back(gpt.children_flat[ci]);
    }
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
        idx_t v = *it;
        for (idx_t ci = gpt.child_begin[v]; ci < gpt.child_end[v]; ++ci)
            pos_inv[v] = std::min(pos_inv[v], pos_inv[gpt.children_flat[ci]]);
    }
    return pos_inv;
}

} // namespace efg
