#include "efg/msa.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <fstream>
#include <sstream>

namespace efg {

Msa Msa::from_strings(const std::vector<std::string>& rows, std::vector<std::string> names) {
    if (rows.empty())
        throw FormatError("alignment has no rows");
    const std::size_t n = rows.front().size();
    if (n == 0)
        throw FormatError("alignment rows are empty");
    for (const auto& r : rows)
        if (r.size() != n)
            throw FormatError("alignment rows have unequal lengths");

    std::array<bool, 256> seen{};
    for (const auto& r : rows)
        for (char c : r) {
            if (c == '-')
                continue;
            unsigned char u = static_cast<unsigned char>(c);
            if (u <= ' ' || u == 0x7f)
                throw FormatError("non-printable symbol in alignment row");
            seen[u] = true;
        }

    Msa msa;
    msa.n_ = static_cast<idx_t>(n);
    std::array<uint8_t, 256> code{};
    for (int c = 0; c < 256; ++c) {
        if (seen[c]) {
            msa.alphabet_.push_back(static_cast<char>(c));
            code[c] = static_cast<uint8_t>(msa.alphabet_.size());
        }
    }
    msa.sigma_ = static_cast<idx_t>(msa.alphabet_.size());

    msa.rows_.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<uint8_t> enc(n);
        std::vector<uint8_t> sp;
        std::vector<idx_t> rk(n + 1, 0);
        std::vector<idx_t> sel;
        sel.push_back(0); // unused slot so that sel[k] is the k-th symbol
        for (std::size_t j = 0; j < n; ++j) {
            char c = rows[i][j];
            enc[j] = (c == '-') ? kGap : code[static_cast<unsigned char>(c)];
            rk[j + 1] = rk[j] + (enc[j] != kGap);
            if (enc[j] != kGap) {
                sp.push_back(enc[j]);
                sel.push_back(static_cast<idx_t>(j + 1));
            }
        }
        if (sp.empty())
            throw FormatError("row " + std::to_string(i + 1) + " consists entirely of gaps");
        msa.rows_.push_back(std::move(enc));
        msa.spelled_.push_back(std::move(sp));
        msa.rank_.push_back(std::move(rk));
        msa.select_.push_back(std::move(sel));
    }

    if (names.empty()) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            names.push_back("row" + std::to_string(i + 1));
    }
    if (names.size() != rows.size())
        throw FormatError("name count does not match row count");
    msa.names_ = std::move(names);
    return msa;
}

uint8_t Msa::encode(char c) const {
    auto pos = alphabet_.find(c);
    return pos == std::string::npos ? 0 : static_cast<uint8_t>(pos + 1);
}

idx_t Msa::select(idx_t row, idx_t k) const {
    const auto& sel = select_[row - 1];
    if (k <= 0)
        throw InvariantError("select index must be positive");
    if (k < static_cast<idx_t>(sel.size()))
        return sel[k];
    if (k == static_cast<idx_t>(sel.size()))
        return n_ + 1; // virtual terminator column
    throw InvariantError("select index past the terminator column");
}

std::string Msa::spell(idx_t row, idx_t x, idx_t y) const {
    std::string out;
    for (idx_t j = x; j <= y; ++j) {
        uint8_t c = at(row, j);
        if (c != kGap)
            out.push_back(decode(c));
    }
    return out;
}

std::vector<uint8_t> Msa::spell_codes(idx_t row, idx_t x, idx_t y) const {
    std::vector<uint8_t> out;
    for (idx_t j = x; j <= y; ++j) {
        uint8_t c = at(row, j);
        if (c != kGap)
            out.push_back(c);
    }
    return out;
}

bool Msa::is_segment_semi_repeat_free(SegmentInterval seg) const {
    assert(1 <= seg.x && seg.x <= seg.y && seg.y <= n_);
    for (idx_t i = 1; i <= m(); ++i) {
        auto pat = spell_codes(i, seg.x, seg.y);
        if (pat.empty())
            return false; // empty spell violates the non-empty block rule
        for (idx_t ii = 1; ii <= m(); ++ii) {
            const auto& text = row_codes(ii);
            idx_t allowed = gap_position(ii, seg.x);
            if (pat.size() > text.size())
                continue;
            for (std::size_t p = 0; p + pat.size() <= text.size(); ++p) {
                if (static_cast<idx_t>(p) + 1 == allowed)
                    continue;
                if (std::equal(pat.begin(), pat.end(), text.begin() + p))
                    return false;
            }
        }
    }
    return true;
}

Msa parse_msa(std::istream& in) {
    std::vector<std::string> rows, names;
    std::string line, current;
    bool have_record = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '>') {
            if (have_record)
                rows.push_back(current);
            current.clear();
            names.push_back(line.substr(1, line.find_first_of(" \t") - 1));
            have_record = true;
        } else {
            if (!have_record)
                throw FormatError("sequence data before the first FASTA header");
            current += line;
        }
    }
    if (have_record)
        rows.push_back(current);
    if (rows.empty())
        throw FormatError("empty FASTA input");
    return Msa::from_strings(rows, std::move(names));
}

Msa parse_msa_file(const std::string& path) {
    std::ifstream fs(path);
    if (!fs)
        throw FormatError("cannot open " + path);
    return parse_msa(fs);
}

} // namespace efg
