#include "efg/efg_index.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "efg/io_util.hpp"

namespace efg {

namespace {

constexpr idx_t kInfLen = INT32_MAX / 2;

// Locus = host node plus number of matched symbols (parent depth < len <= depth).
struct Locus {
    idx_t node = 0;
    idx_t len = 0;
};

bool descend(const SuffixTreeIndex& st, Locus& lc, int32_t c, long& steps) {
    ++steps;
    if (lc.len == st.depth[lc.node]) {
        idx_t ch = st.child_by_symbol(lc.node, c);
        if (ch < 0)
            return false;
        lc.node = ch;
        ++lc.len;
        return true;
    }
    if (st.text[st.leaf_text_pos[st.lml[lc.node]] + lc.len] != c)
        return false;
    ++lc.len;
    return true;
}

bool next_is(const SuffixTreeIndex& st, const Locus& lc, int32_t c) {
    if (lc.len == st.depth[lc.node])
        return st.child_by_symbol(lc.node, c) >= 0;
    return st.text[st.leaf_text_pos[st.lml[lc.node]] + lc.len] == c;
}

// Subtree holding all continuations of the locus string followed by kSep.
idx_t sep_subtree(const SuffixTreeIndex& st, const Locus& lc) {
    if (lc.len == st.depth[lc.node])
        return st.child_by_symbol(lc.node, EfgIndex::kSep);
    return lc.node;
}

} // namespace

void EfgIndex::build_derived() {
    // per-position edge attribution and region starts of d_r
    edge_of_r.assign(d_r.size(), -1);
    std::vector<idx_t> region_start(graph.edges.size());
    {
        std::size_t pos = 0;
        for (std::size_t ei = 0; ei < graph.edges.size(); ++ei) {
            const auto& e = graph.edges[ei];
            const std::size_t lv = graph.labels[e.from].size();
            const std::size_t lw = graph.labels[e.to].size();
            region_start[ei] = static_cast<idx_t>(pos);
            const std::size_t len = lv + lw + 1 + lv + 1; // labels, sep, dollars, sep
            for (std::size_t k = 0; k < len; ++k)
                edge_of_r[pos + k] = static_cast<idx_t>(ei);
            pos += len;
        }
        assert(pos + 1 == d_r.size());
    }

    // smallest left-label length among X-then-separator continuations
    min_left_label.assign(st_r.node_count(), kInfLen);
    for (idx_t k = 0; k < st_r.leaf_count(); ++k) {
        idx_t p = st_r.leaf_text_pos[k];
        if (d_r[p] < kSymBase)
            continue;
        idx_t e = edge_of_r[p];
        min_left_label[st_r.leaf_node[k]] =
            static_cast<idx_t>(graph.labels[graph.edges[e].from].size());
    }
    {
        std::vector<idx_t> dfs{0}, order;
        order.reserve(st_r.node_count());
        while (!dfs.empty()) {
            idx_t v = dfs.back();
            dfs.pop_back();
            order.push_back(v);
            for (idx_t ci = st_r.child_begin[v]; ci < st_r.child_end[v]; ++ci)
                dfs.push_back(st_r.children_flat[ci]);
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it)
            for (idx_t ci = st_r.child_begin[*it]; ci < st_r.child_end[*it]; ++ci)
                min_left_label[*it] =
                    std::min(min_left_label[*it], min_left_label[st_r.children_flat[ci]]);
    }

    region_start_leaf_r = BitSeq(st_r.leaf_count());
    for (std::size_t ei = 0; ei < graph.edges.size(); ++ei)
        region_start_leaf_r.set(st_r.rank_of_pos[region_start[ei]]);
    region_start_leaf_r.finalize();
}

EfgIndex build_efg_index(const Efg& g) {
    if (g.block_count() < 2)
        throw InvariantError("cannot index a trivial single-block graph: no edges");
    if (!validate_efg(g))
        throw InvariantError("graph is not semi-repeat-free");

    EfgIndex ix;
    ix.graph = g;
    std::array<bool, 256> seen{};
    for (const auto& lab : g.labels)
        for (char c : lab)
            seen[static_cast<unsigned char>(c)] = true;
    int32_t next = EfgIndex::kSymBase;
    for (int c = 0; c < 256; ++c)
        if (seen[c])
            ix.char_code[c] = next++;

    auto enc = [&](char c) { return ix.char_code[static_cast<unsigned char>(c)]; };
    for (const auto& e : g.edges) {
        for (char c : g.labels[e.from])
            ix.d_f.push_back(enc(c));
        for (char c : g.labels[e.to])
            ix.d_f.push_back(enc(c));
        ix.d_f.push_back(EfgIndex::kSep);
    }
    ix.d_f.push_back(0);
    for (const auto& e : g.edges) {
        std::string cat = g.labels[e.from] + g.labels[e.to];
        for (auto it = cat.rbegin(); it != cat.rend(); ++it)
            ix.d_r.push_back(enc(*it));
        ix.d_r.push_back(EfgIndex::kSep);
        ix.d_r.insert(ix.d_r.end(), g.labels[e.from].size(), EfgIndex::kDollar);
        ix.d_r.push_back(EfgIndex::kSep);
    }
    ix.d_r.push_back(0);

    ix.st_f = build_suffix_tree(ix.d_f, next);
    ix.st_r = build_suffix_tree(ix.d_r, next);
    ix.build_derived();
    return ix;
}

bool EfgIndex::query(const std::string& pattern, QueryStats* stats) const {
    QueryStats local;
    QueryStats& qs = stats ? *stats : local;
    qs = QueryStats{};

    if (pattern.empty()) {
        qs.matched = true;
        return true;
    }
    const idx_t qlen = static_cast<idx_t>(pattern.size());
    std::vector<int32_t> code(qlen);
    for (idx_t t = 0; t < qlen; ++t) {
        code[t] = char_code[static_cast<unsigned char>(pattern[t])];
        if (code[t] == 0)
            return false; // symbol does not occur in the graph
    }

    // case 1: longest suffix of the pattern matching within two nodes,
    // tracked together with the deepest block-boundary alignment
    Locus lc{st_r.root(), 0};
    Locus boundary{};
    idx_t matched = 0, k = 0;
    for (idx_t t = qlen - 1; t >= 0; --t) {
        if (!descend(st_r, lc, code[t], qs.steps))
            break;
        ++matched;
        if (next_is(st_r, lc, kSep)) {
            k = matched;
            boundary = lc;
        }
    }
    if (matched == qlen) {
        qs.matched = true;
        qs.span_case = 1;
        return true;
    }
    if (k == 0) {
        qs.rejected_no_boundary = true;
        return false; // no node label starts with the trailing characters
    }
    if (min_left_label[sep_subtree(st_r, boundary)] > k) {
        qs.rejected_no_full_label = true;
        return false; // the aligned suffix never covers a full left label
    }

    const idx_t j = qlen - k;

    // lengths p such that pattern[j..j+p) is a node label whose block
    // continues the remaining suffix: read 0 $^p 0 below the boundary
    std::vector<char> markP(k + 1, 0);
    {
        Locus ml = boundary;
        if (descend(st_r, ml, kSep, qs.steps)) {
            for (idx_t p = 1; p <= k; ++p) {
                if (!descend(st_r, ml, kDollar, qs.steps))
                    break;
                if (next_is(st_r, ml, kSep))
                    markP[p] = 1;
            }
        }
    }

    // case 2: a match spanning exactly three nodes
    {
        Locus lf{st_f.root(), 0};
        bool ok = true;
        for (idx_t t = 0; t < j && ok; ++t)
            ok = descend(st_f, lf, code[t], qs.steps);
        for (idx_t p = 1; ok && p <= k; ++p) {
            ok = descend(st_f, lf, code[j + p - 1], qs.steps);
            if (ok && markP[p] && next_is(st_f, lf, kSep)) {
                qs.matched = true;
                qs.span_case = 2;
                return true;
            }
        }
    }

    // case 3: at least four nodes; walk leftward one full label at a time
    idx_t p_hat = 0;
    for (idx_t p = 1; p <= k && p_hat == 0; ++p)
        if (markP[p])
            p_hat = p;
    assert(p_hat > 0); // implied by the full-label check

    idx_t curlo = j, curhi = j + p_hat;
    idx_t rem = j;
    bool first_step = true;
    while (true) {
        // reverse(pattern[0..rem) . label(cur)) in the suffix tree of d_r
        Locus lr{st_r.root(), 0};
        for (idx_t t = curhi - 1; t >= curlo; --t) {
            bool ok = descend(st_r, lr, code[t], qs.steps);
            assert(ok);
            if (!ok)
                return false;
        }
        idx_t consumed = 0, cross_chunk = 0;
        for (idx_t t = rem - 1; t >= 0; --t) {
            if (!descend(st_r, lr, code[t], qs.steps))
                break;
            ++consumed;
            if (next_is(st_r, lr, kSep))
                cross_chunk = consumed; // complete label ends exactly here
        }
        if (consumed == rem) {
            // whole remaining pattern matched left of cur; real iff some
            // occurrence is anchored at an edge-region start
            idx_t host = lr.node;
            if (region_start_leaf_r.rank1(st_r.rml[host] + 1) -
                    region_start_leaf_r.rank1(st_r.lml[host]) >
                0) {
                qs.matched = true;
                qs.span_case = 3;
                return true;
            }
        }
        if (cross_chunk == 0)
            return false;

        const idx_t nlo = rem - cross_chunk, nhi = rem;
        // verify the edge (candidate, cur) in the suffix tree of d_f
        bool verified = false;
        {
            Locus lf{st_f.root(), 0};
            bool ok = true;
            for (idx_t t = nlo; t < nhi && ok; ++t)
                ok = descend(st_f, lf, code[t], qs.steps);
            if (first_step) {
                for (idx_t p = 1; ok && p <= k; ++p) {
                    ok = descend(st_f, lf, code[j + p - 1], qs.steps);
                    if (ok && markP[p] && next_is(st_f, lf, kSep)) {
                        verified = true;
                        break;
                    }
                }
            } else {
                for (idx_t t = curlo; t < curhi && ok; ++t)
                    ok = descend(st_f, lf, code[t], qs.steps);
                verified = ok && next_is(st_f, lf, kSep);
            }
        }
        if (!verified)
            return false;

        curlo = nlo;
        curhi = nhi;
        rem = nlo;
        first_step = false;
        if (rem == 0) {
            qs.matched = true;
            qs.span_case = 3;
            return true;
        }
    }
}

namespace {

bool oracle_match_from(const Efg& g, const std::vector<std::vector<std::pair<idx_t, idx_t>>>& adj,
                       const std::string& pat, std::size_t q, idx_t node, std::size_t off) {
    const std::string& lab = g.labels[node];
    while (q < pat.size() && off < lab.size()) {
        if (pat[q] != lab[off])
            return false;
        ++q;
        ++off;
    }
    if (q == pat.size())
        return true;
    for (const auto& [w, e] : adj[node]) {
        (void)e;
        if (oracle_match_from(g, adj, pat, q, w, 0))
            return true;
    }
    return false;
}

} // namespace

bool naive_graph_match(const Efg& g, const std::string& pattern) {
    if (pattern.empty())
        return true;
    auto adj = g.out_adj();
    for (idx_t v = 0; v < g.node_count(); ++v)
        for (std::size_t off = 0; off < g.labels[v].size(); ++off)
            if (oracle_match_from(g, adj, pattern, 0, v, off))
                return true;
    return false;
}

namespace {
enum Section : uint32_t {
    kGraph = 1,
    kDF = 2,
    kDR = 3,
    kTreeF = 4,
    kTreeR = 5,
};
} // namespace

void EfgIndex::save(std::ostream& os) const {
    SectionWriter w;
    {
        std::ostringstream g;
        write_efg(g, graph);
        std::vector<uint8_t> payload;
        put_str(payload, g.str());
        w.add(kGraph, std::move(payload));
    }
    {
        std::vector<uint8_t> payload;
        put_i32_vec(payload, d_f);
        w.add(kDF, std::move(payload));
    }
    {
        std::vector<uint8_t> payload;
        put_i32_vec(payload, d_r);
        w.add(kDR, std::move(payload));
    }
    w.add(kTreeF, st_f.to_bytes());
    w.add(kTreeR, st_r.to_bytes());
    w.write(os, 1);
}

EfgIndex EfgIndex::load(std::istream& is) {
    SectionReader r;
    r.read(is, 1);
    EfgIndex ix;
    {
        ByteCursor c{&r.get(kGraph)};
        std::istringstream g(c.str());
        ix.graph = read_efg(g);
    }
    {
        ByteCursor c{&r.get(kDF)};
        ix.d_f = c.i32_vec();
    }
    {
        ByteCursor c{&r.get(kDR)};
        ix.d_r = c.i32_vec();
    }
    std::array<bool, 256> seen{};
    for (const auto& lab : ix.graph.labels)
        for (char ch : lab)
            seen[static_cast<unsigned char>(ch)] = true;
    int32_t next = kSymBase;
    for (int c = 0; c < 256; ++c)
        if (seen[c])
            ix.char_code[c] = next++;
    ix.st_f = SuffixTreeIndex::from_bytes(r.get(kTreeF), ix.d_f);
    ix.st_r = SuffixTreeIndex::from_bytes(r.get(kTreeR), ix.d_r);
    ix.build_derived(); // marks are cheap to recompute from the trees
    return ix;
}

} // namespace efg
