#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace efg {

using idx_t = int32_t;

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed column interval [x..y], 1-based.
struct SegmentInterval {
    idx_t x = 1;
    idx_t y = 1;
};

// A gapped multiple sequence alignment over a dense integer alphabet.
// Symbol codes are 1..sigma, 0 is the gap. Per-row rank/select
// directories answer gap-aware coordinate queries in constant time.
class Msa {
public:
    static constexpr uint8_t kGap = 0;

    // Build from rows of raw characters; '-' is the gap. The remaining
    // characters are densified into codes 1..sigma in byte order.
    static Msa from_strings(const std::vector<std::string>& rows,
                            std::vector<std::string> names = {});

    idx_t m() const { return static_cast<idx_t>(rows_.size()); }
    idx_t n() const { return n_; }
    idx_t sigma() const { return sigma_; }

    uint8_t at(idx_t row, idx_t col) const { return rows_[row - 1][col - 1]; }
    bool is_gap(idx_t row, idx_t col) const { return at(row, col) == kGap; }

    const std::string& row_name(idx_t row) const { return names_[row - 1]; }
    char decode(uint8_t code) const { return alphabet_[code - 1]; }
    // Returns 0 if c does not occur in the alignment alphabet.
    uint8_t encode(char c) const;

    // Number of non-gap symbols in row i, columns [1..x]; x may be 0.
    idx_t rank(idx_t row, idx_t x) const { return rank_[row - 1][x]; }
    // Column of the k-th non-gap symbol of row i; n+1 when k = row_length+1
    // (the virtual terminator column).
    idx_t select(idx_t row, idx_t k) const;
    // Length of the gaps-removed row.
    idx_t row_length(idx_t row) const { return rank(row, n_); }

    // Gap-free text of row i restricted to columns [x..y]; x = y+1 gives "".
    std::string spell(idx_t row, idx_t x, idx_t y) const;
    std::vector<uint8_t> spell_codes(idx_t row, idx_t x, idx_t y) const;
    // Full gaps-removed row as codes.
    const std::vector<uint8_t>& row_codes(idx_t row) const { return spelled_[row - 1]; }

    // Start position of spell(row, x..n) within the gaps-removed row,
    // i.e. 1 + |spell(row, 1..x-1)|.
    idx_t gap_position(idx_t row, idx_t x) const { return rank(row, x - 1) + 1; }

    // Definitional semi-repeat-free check for one segment: every row's
    // spell is non-empty and occurs in every gaps-removed row only at
    // its gap-adjusted start. Quadratic scan; used as the oracle.
    bool is_segment_semi_repeat_free(SegmentInterval seg) const;

private:
    idx_t n_ = 0;
    idx_t sigma_ = 0;
    std::string alphabet_;                      // code -> character
    std::vector<std::vector<uint8_t>> rows_;    // aligned rows, code 0 = gap
    std::vector<std::vector<uint8_t>> spelled_; // gaps-removed rows
    std::vector<std::vector<idx_t>> rank_;      // per row, prefix non-gap counts
    std::vector<std::vector<idx_t>> select_;    // per row, k -> column
    std::vector<std::string> names_;
};

// Aligned FASTA: '>'-headers, '-' gaps, rows of equal length.
Msa parse_msa(std::istream& in);
Msa parse_msa_file(const std::string& path);

} // namespace efg
