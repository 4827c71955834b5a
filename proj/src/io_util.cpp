#include "efg/io_util.hpp"

#include <istream>
#include <ostream>

namespace efg {

namespace {

void raw_u32(std::ostream& os, uint32_t v) {
    for (int i = 0; i < 4; ++i)
        os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

void raw_u64(std::ostream& os, uint64_t v) {
    for (int i = 0; i < 8; ++i)
        os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint32_t read_u32(std::istream& is) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<uint32_t>(static_cast<unsigned char>(is.get())) << (8 * i);
    return v;
}

uint64_t read_u64(std::istream& is) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<uint64_t>(static_cast<unsigned char>(is.get())) << (8 * i);
    return v;
}

} // namespace

void SectionWriter::write(std::ostream& os, uint8_t version) const {
    os.write("EFGX", 4);
    os.put(static_cast<char>(version));
    raw_u32(os, static_cast<uint32_t>(sections_.size()));
    for (const auto& [name, payload] : sections_) {
        raw_u32(os, name);
        raw_u64(os, payload.size());
        os.write(reinterpret_cast<const char*>(payload.data()),
                 static_cast<std::streamsize>(payload.size()));
    }
}

void SectionReader::read(std::istream& is, uint8_t expected_version) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != "EFGX")
        throw FormatError("not an index file (bad magic)");
    int version = is.get();
    if (version != expected_version)
        throw FormatError("unsupported index version " + std::to_string(version));
    uint32_t count = read_u32(is);
    for (uint32_t k = 0; k < count; ++k) {
        uint32_t name = read_u32(is);
        uint64_t size = read_u64(is);
        std::vector<uint8_t> payload(size);
        is.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(size));
        if (!is)
            throw FormatError("truncated index file");
        sections_[name] = std::move(payload);
    }
}

const std::vector<uint8_t>& SectionReader::get(uint32_t name) const {
    auto it = sections_.find(name);
    if (it == sections_.end())
        throw FormatError("index file is missing section " + std::to_string(name));
    return it->second;
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xff));
}

void put_i32_vec(std::vector<uint8_t>& out, const std::vector<int32_t>& v) {
    put_u64(out, v.size());
    for (int32_t x : v) {
        uint32_t u = static_cast<uint32_t>(x);
        for (int i = 0; i < 4; ++i)
            out.push_back(static_cast<uint8_t>((u >> (8 * i)) & 0xff));
    }
}

void put_str(std::vector<uint8_t>& out, const std::string& s) {
    put_u64(out, s.size());
    out.insert(out.end(), s.begin(), s.end());
}

uint64_t ByteCursor::u64() {
    uint64_t v = 0;
    if (pos + 8 > buf->size())
        throw FormatError("truncated section");
    for (int i = 0; i < 8; ++i)
        v |= static_cast<uint64_t>((*buf)[pos++]) << (8 * i);
    return v;
}

std::vector<int32_t> ByteCursor::i32_vec() {
    uint64_t count = u64();
    if (pos + 4 * count > buf->size())
        throw FormatError("truncated section");
    std::vector<int32_t> v(count);
    for (uint64_t k = 0; k < count; ++k) {
        uint32_t u = 0;
        for (int i = 0; i < 4; ++i)
            u |= static_cast<uint32_t>((*buf)[pos++]) << (8 * i);
        v[k] = static_cast<int32_t>(u);
    }
    return v;
}

std::string ByteCursor::str() {
    uint64_t count = u64();
    if (pos + count > buf->size())
        throw FormatError("truncated section");
    std::string s(buf->begin() + static_cast<std::ptrdiff_t>(pos),
                  buf->begin() + static_cast<std::ptrdiff_t>(pos + count));
    pos += count;
    return s;
}

} // namespace efg
