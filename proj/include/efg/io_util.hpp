#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "efg/msa.hpp"

namespace efg {

// Versioned little-endian section container shared by the persisted
// indexes. Layout: magic "EFGX", version byte, u32 section count, then per
// section a u32 name id, u64 payload size, and the payload bytes.
class SectionWriter {
public:
    void add(uint32_t name, std::vector<uint8_t> payload) { sections_[name] = std::move(payload); }
    void write(std::ostream& os, uint8_t version) const;

private:
    std::map<uint32_t, std::vector<uint8_t>> sections_;
};

class SectionReader {
public:
    void read(std::istream& is, uint8_t expected_version);
    const std::vector<uint8_t>& get(uint32_t name) const;
    bool has(uint32_t name) const { return sections_.count(name) != 0; }

private:
    std::map<uint32_t, std::vector<uint8_t>> sections_;
};

// Flat little-endian encoders used for section payloads.
void put_u64(std::vector<uint8_t>& out, uint64_t v);
void put_i32_vec(std::vector<uint8_t>& out, const std::vector<int32_t>& v);
void put_str(std::vector<uint8_t>& out, const std::string& s);

struct ByteCursor {
    const std::vector<uint8_t>* buf;
    std::size_t pos = 0;
    uint64_t u64();
    std::vector<int32_t> i32_vec();
    std::string str();
};

} // namespace efg
