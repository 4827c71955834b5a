#include "efg/oracles.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace efg {

Msa generate_msa(const RandomMsaSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    auto pick = [&](idx_t lo, idx_t hi) {
        return lo + static_cast<idx_t>(rng() % static_cast<uint64_t>(hi - lo + 1));
    };
    const idx_t m = pick(spec.m_min, spec.m_max);
    const idx_t n = pick(spec.n_min, spec.n_max);
    const idx_t sigma = pick(spec.sigma_min, spec.sigma_max);

    std::vector<std::string> rows;
    if (spec.pathological_mode) {
        // two rows spelling the same all-distinct string, the second
        // delayed by one column, so the exact height flips at every column
        // while the spells stay one prefix of the other
        auto sym = [](idx_t t) -> char {
            int c = 33 + t;          // printable, skipping '-' (45)
            if (c >= 45) ++c;
            if (c >= 127) c += 1;    // jump over DEL into the high bytes
            return static_cast<char>(c & 0xff);
        };
        std::string a(n, '-'), b(n, '-');
        for (idx_t t = 0; 2 * t < n; ++t) {
            a[2 * t] = sym(t);
            if (2 * t + 1 < n)
                b[2 * t + 1] = sym(t);
        }
        if (n == 1)
            b[0] = sym(0);
        rows.push_back(a);
        rows.push_back(b);
        for (idx_t i = 2; i < m; ++i)
            rows.push_back(a);
    } else {
        std::uniform_real_distribution<double> gap(0.0, 1.0);
        for (idx_t i = 0; i < m; ++i) {
            std::string r;
            bool nongap = false;
            for (idx_t j = 0; j < n; ++j) {
                if (gap(rng) < spec.gap_probability) {
                    r.push_back('-');
                } else {
                    r.push_back(static_cast<char>('A' + rng() % sigma));
                    nongap = true;
                }
            }
            if (!nongap)
                r[rng() % n] = static_cast<char>('A' + rng() % sigma); // no all-gap rows
            rows.push_back(std::move(r));
        }
    }
    return Msa::from_strings(rows);
}

std::vector<idx_t> naive_minimal_extensions(const Msa& msa) {
    const idx_t n = msa.n();
    std::vector<idx_t> f(n, n + 1);
    for (idx_t x = 0; x < n; ++x)
        for (idx_t y = x + 1; y <= n; ++y)
            if (msa.is_segment_semi_repeat_free({x + 1, y})) {
                f[x] = y;
                break;
            }
    return f;
}

std::vector<idx_t> brute_force_exclusive_ancestors(const TreeView& t,
                                                   const std::vector<idx_t>& leaf_ranks) {
    std::vector<char> in_l(t.leaves, 0);
    for (idx_t r : leaf_ranks)
        in_l[r] = 1;
    auto exclusive = [&](idx_t v) {
        for (idx_t r = t.lml[v]; r <= t.rml[v]; ++r)
            if (!in_l[r])
                return false;
        return true;
    };
    std::vector<idx_t> out;
    std::vector<char> taken(t.nodes, 0);
    for (idx_t r : leaf_ranks) {
        idx_t v = t.leaf_node[r];
        while (t.parent[v] >= 0 && exclusive(t.parent[v]))
            v = t.parent[v];
        if (!taken[v]) {
            taken[v] = 1;
            out.push_back(v);
        }
    }
    return out;
}

RandomTree generate_tree(std::mt19937_64& rng, idx_t max_leaves) {
    // grow top-down: every internal node gets 2..4 children, leaves stop
    RandomTree t;
    idx_t leaf_budget = 2 + static_cast<idx_t>(rng() % static_cast<uint64_t>(max_leaves - 1));
    struct Pending {
        idx_t node;
        idx_t leaves; // leaves this subtree must produce
    };
    t.parent.push_back(-1);
    std::vector<std::vector<idx_t>> kids(1);
    std::vector<Pending> stack{{0, leaf_budget}};
    std::vector<idx_t> leaf_nodes_in_order;
    while (!stack.empty()) {
        auto [v, quota] = stack.back();
        stack.pop_back();
        if (quota == 1) {
            leaf_nodes_in_order.push_back(v);
            continue;
        }
        idx_t fanout = 2 + static_cast<idx_t>(rng() % 3);
        fanout = std::min(fanout, quota);
        // split quota over children, each at least 1
        std::vector<idx_t> share(fanout, 1);
        for (idx_t rest = quota - fanout; rest > 0; --rest)
            ++share[rng() % fanout];
        std::vector<Pending> batch;
        for (idx_t c = 0; c < fanout; ++c) {
            idx_t id = static_cast<idx_t>(t.parent.size());
            t.parent.push_back(v);
            kids.emplace_back();
            kids[v].push_back(id);
            batch.push_back({id, share[c]});
        }
        // preserve left-to-right order in the DFS
        for (auto it = batch.rbegin(); it != batch.rend(); ++it)
            stack.push_back(*it);
    }
    const idx_t nodes = static_cast<idx_t>(t.parent.size());
    t.lml.assign(nodes, -1);
    t.rml.assign(nodes, -1);
    t.leaves = static_cast<idx_t>(leaf_nodes_in_order.size());
    t.leaf_node = leaf_nodes_in_order;
    for (idx_t r = 0; r < t.leaves; ++r) {
        t.lml[t.leaf_node[r]] = r;
        t.rml[t.leaf_node[r]] = r;
    }
    // bottom-up ranges
    std::vector<idx_t> order, dfs{0};
    while (!dfs.empty()) {
        idx_t v = dfs.back();
        dfs.pop_back();
        order.push_back(v);
        for (idx_t c : kids[v])
            dfs.push_back(c);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        idx_t v = *it;
        if (kids[v].empty())
            continue;
        t.lml[v] = t.lml[kids[v].front()];
        t.rml[v] = t.rml[kids[v].back()];
    }
    return t;
}

} // namespace efg
