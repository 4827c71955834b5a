#include "efg/efg.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <map>
#include <sstream>

namespace efg {

std::vector<std::vector<std::pair<idx_t, idx_t>>> Efg::out_adj() const {
    std::vector<std::vector<std::pair<idx_t, idx_t>>> adj(node_count());
    for (std::size_t e = 0; e < edges.size(); ++e)
        adj[edges[e].from].push_back({edges[e].to, static_cast<idx_t>(e)});
    return adj;
}

Efg induce_efg(const Msa& msa, const Segmentation& seg) {
    Efg g;
    g.msa_rows = msa.m();
    g.msa_cols = msa.n();
    for (idx_t i = 1; i <= msa.m(); ++i)
        g.row_names.push_back(msa.row_name(i));

    const idx_t b = static_cast<idx_t>(seg.intervals.size());
    g.blocks.resize(b);
    g.row_paths.assign(msa.m(), std::vector<idx_t>(b, -1));
    for (idx_t k = 0; k < b; ++k) {
        const auto iv = seg.intervals[k];
        std::map<std::string, idx_t> ids; // label-lexicographic within the block
        std::vector<std::string> row_label(msa.m());
        for (idx_t i = 1; i <= msa.m(); ++i) {
            row_label[i - 1] = msa.spell(i, iv.x, iv.y);
            if (row_label[i - 1].empty())
                throw InvariantError("segment spells an empty string (invalid segmentation)");
            ids.emplace(row_label[i - 1], 0);
        }
        for (auto& [label, id] : ids) {
            id = g.node_count();
            g.labels.push_back(label);
            g.block_of.push_back(k);
            g.blocks[k].push_back(id);
        }
        for (idx_t i = 1; i <= msa.m(); ++i)
            g.row_paths[i - 1][k] = ids[row_label[i - 1]];
    }

    std::map<std::pair<idx_t, idx_t>, std::vector<idx_t>> edge_rows;
    for (idx_t i = 0; i < msa.m(); ++i)
        for (idx_t k = 0; k + 1 < b; ++k)
            edge_rows[{g.row_paths[i][k], g.row_paths[i][k + 1]}].push_back(i + 1);
    for (auto& [vw, rows] : edge_rows)
        g.edges.push_back({vw.first, vw.second, rows});
    return g;
}

namespace {

// Does the pattern match the graph starting inside label `node` at
// 0-based offset `off`? Branches over out-edges at label ends.
bool match_from(const Efg& g, const std::vector<std::vector<std::pair<idx_t, idx_t>>>& adj,
                const std::string& pat, idx_t node, std::size_t off) {
    std::size_t q = 0;
    idx_t v = node;
    std::size_t pos = off;
    while (true) {
        const std::string& lab = g.labels[v];
        while (q < pat.size() && pos < lab.size()) {
            if (pat[q] != lab[pos])
                return false;
            ++q;
            ++pos;
        }
        if (q == pat.size())
            return true;
        // crossed the end of this label; branch
        for (const auto& [w, e] : adj[v]) {
            (void)e;
            if (match_from(g, adj, pat.substr(q), w, 0))
                return true;
        }
        return false;
    }
}

} // namespace

bool validate_efg(const Efg& g) {
    auto adj = g.out_adj();
    for (idx_t v = 0; v < g.node_count(); ++v) {
        const std::string& lab = g.labels[v];
        for (idx_t u = 0; u < g.node_count(); ++u) {
            for (std::size_t off = 0; off < g.labels[u].size(); ++off) {
                if (!match_from(g, adj, lab, u, off))
                    continue;
                // an occurrence starting inside u at offset off
                if (off != 0 || g.block_of[u] != g.block_of[v])
                    return false;
            }
        }
    }
    return true;
}

EfgStats graph_stats(const Efg& g) {
    EfgStats st;
    st.block_count = g.block_count();
    for (const auto& lab : g.labels) {
        st.total_label_length += static_cast<int64_t>(lab.size());
        st.max_label_length = std::max(st.max_label_length, static_cast<idx_t>(lab.size()));
    }
    for (const auto& blk : g.blocks)
        st.height = std::max(st.height, static_cast<idx_t>(blk.size()));
    for (const auto& e : g.edges)
        st.total_edge_label_length +=
            static_cast<int64_t>(g.labels[e.from].size() + g.labels[e.to].size());
    return st;
}

void write_efg(std::ostream& os, const Efg& g) {
    os << "EFG " << g.msa_rows << ' ' << g.msa_cols << ' ' << g.block_count() << '\n';
    for (idx_t k = 0; k < g.block_count(); ++k)
        os << "B " << k + 1 << ' ' << g.blocks[k].size() << '\n';
    for (idx_t v = 0; v < g.node_count(); ++v)
        os << "N " << v + 1 << ' ' << g.block_of[v] + 1 << ' ' << g.labels[v] << '\n';
    for (const auto& e : g.edges) {
        os << "E " << e.from + 1 << ' ' << e.to + 1 << ' ';
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            os << (i ? "," : "") << e.rows[i];
        os << '\n';
    }
    for (idx_t i = 0; i < g.msa_rows; ++i) {
        os << "P " << g.row_names[i];
        for (idx_t v : g.row_paths[i])
            os << ' ' << v + 1;
        os << '\n';
    }
}

Efg read_efg(std::istream& is) {
    Efg g;
    std::string tag;
    idx_t nblocks = 0;
    if (!(is >> tag) || tag != "EFG")
        throw FormatError("not an EFG file (missing EFG magic)");
    if (!(is >> g.msa_rows >> g.msa_cols >> nblocks) || nblocks <= 0)
        throw FormatError("malformed EFG header");
    g.blocks.resize(nblocks);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "B") {
            idx_t k, count;
            if (!(ls >> k >> count) || k < 1 || k > nblocks)
                throw FormatError("malformed block line");
        } else if (kind == "N") {
            idx_t id, k;
            std::string label;
            if (!(ls >> id >> k >> label) || k < 1 || k > nblocks || label.empty())
                throw FormatError("malformed node line");
            if (id != g.node_count() + 1)
                throw FormatError("node ids must be dense and ascending");
            g.labels.push_back(label);
            g.block_of.push_back(k - 1);
            g.blocks[k - 1].push_back(id - 1);
        } else if (kind == "E") {
            idx_t a, bnode;
            std::string rows;
            if (!(ls >> a >> bnode >> rows))
                throw FormatError("malformed edge line");
            Efg::Edge e;
            e.from = a - 1;
            e.to = bnode - 1;
            std::istringstream rs(rows);
            std::string tok;
            while (std::getline(rs, tok, ','))
                e.rows.push_back(std::stoi(tok));
            if (e.from < 0 || e.from >= g.node_count() || e.to < 0 || e.to >= g.node_count())
                throw FormatError("edge endpoint out of range");
            if (g.block_of[e.to] != g.block_of[e.from] + 1)
                throw InvariantError("edge does not connect consecutive blocks");
            g.edges.push_back(std::move(e));
        } else if (kind == "P") {
            std::string name;
            ls >> name;
            std::vector<idx_t> path;
            idx_t v;
            while (ls >> v) {
                if (v < 1 || v > g.node_count())
                    throw FormatError("path node out of range");
                path.push_back(v - 1);
            }
            g.row_names.push_back(name);
            g.row_paths.push_back(std::move(path));
        } else {
            throw FormatError("unknown EFG line kind: " + kind);
        }
    }
    if (g.node_count() == 0)
        throw FormatError("EFG file has no nodes");
    if (static_cast<idx_t>(g.row_paths.size()) != g.msa_rows)
        throw FormatError("EFG row path count does not match header");
    return g;
}

Efg read_efg_file(const std::string& path) {
    std::ifstream fs(path);
    if (!fs)
        throw FormatError("cannot open " + path);
    return read_efg(fs);
}

} // namespace efg
