#include "qbank/zipfile.hpp"

#include <zlib.h>

#include <cstring>

#include "qbank/model.hpp"

namespace qbank::zip {

namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;
constexpr std::size_t kStoreThreshold = 1024;

// 1980-01-01 00:00:00 in DOS date/time fields.
constexpr std::uint16_t kDosTime = 0;
constexpr std::uint16_t kDosDate = (0 << 9) | (1 << 5) | 1;

void put16(std::vector<std::uint8_t>& b, std::uint16_t v) {
    b.push_back(v & 0xff);
    b.push_back((v >> 8) & 0xff);
}

void put32(std::vector<std::uint8_t>& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff);
}

std::uint16_t get16(const std::vector<std::uint8_t>& b, std::size_t pos) {
    return static_cast<std::uint16_t>(b[pos] | (b[pos + 1] << 8));
}

std::uint32_t get32(const std::vector<std::uint8_t>& b, std::size_t pos) {
    return static_cast<std::uint32_t>(b[pos]) | (static_cast<std::uint32_t>(b[pos + 1]) << 8) |
           (static_cast<std::uint32_t>(b[pos + 2]) << 16) |
           (static_cast<std::uint32_t>(b[pos + 3]) << 24);
}

std::vector<std::uint8_t> deflate_raw(const std::vector<std::uint8_t>& data) {
    z_stream zs{};
    if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8,
                     Z_DEFAULT_STRATEGY) != Z_OK)
        throw Error("deflate init failed");
    std::vector<std::uint8_t> out(deflateBound(&zs, data.size()));
    zs.next_in = const_cast<Bytef*>(data.data());
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = deflate(&zs, Z_FINISH);
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) throw Error("deflate failed");
    out.resize(out.size() - zs.avail_out);
    return out;
}

std::vector<std::uint8_t> inflate_raw(const std::uint8_t* data, std::size_t size,
                                      std::size_t expected) {
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) throw Error("inflate init failed");
    std::vector<std::uint8_t> out(expected);
    zs.next_in = const_cast<Bytef*>(data);
    zs.avail_in = static_cast<uInt>(size);
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END) throw Error("corrupt zip archive: inflate failed");
    return out;
}

}  // namespace

std::vector<std::uint8_t> pack(const std::vector<Entry>& entries) {
    std::vector<std::uint8_t> out;
    struct Record {
        std::uint32_t offset, crc, comp_size;
        std::uint16_t method;
        const Entry* entry;
        std::vector<std::uint8_t> compressed;
    };
    std::vector<Record> records;

    for (const auto& e : entries) {
        Record r;
        r.offset = static_cast<std::uint32_t>(out.size());
        r.crc = static_cast<std::uint32_t>(
            crc32(0, e.data.empty() ? Z_NULL : e.data.data(), static_cast<uInt>(e.data.size())));
        r.entry = &e;
        r.method = 0;
        if (e.data.size() >= kStoreThreshold) {
            r.compressed = deflate_raw(e.data);
            if (r.compressed.size() < e.data.size()) r.method = 8;
        }
        const auto& payload = r.method == 8 ? r.compressed : e.data;
        r.comp_size = static_cast<std::uint32_t>(payload.size());

        put32(out, kLocalSig);
        put16(out, 20);            // version needed
        put16(out, 0);             // flags
        put16(out, r.method);
        put16(out, kDosTime);
        put16(out, kDosDate);
        put32(out, r.crc);
        put32(out, r.comp_size);
        put32(out, static_cast<std::uint32_t>(e.data.size()));
        put16(out, static_cast<std::uint16_t>(e.name.size()));
        put16(out, 0);             // extra length
        out.insert(out.end(), e.name.begin(), e.name.end());
        out.insert(out.end(), payload.begin(), payload.end());
        records.push_back(std::move(r));
    }

    std::size_t central_begin = out.size();
    for (const auto& r : records) {
        put32(out, kCentralSig);
        put16(out, 20);  // version made by
        put16(out, 20);  // version needed
        put16(out, 0);
        put16(out, r.method);
        put16(out, kDosTime);
        put16(out, kDosDate);
        put32(out, r.crc);
        put32(out, r.comp_size);
        put32(out, static_cast<std::uint32_t>(r.entry->data.size()));
        put16(out, static_cast<std::uint16_t>(r.entry->name.size()));
        put16(out, 0);  // extra
        put16(out, 0);  // comment
        put16(out, 0);  // disk number
        put16(out, 0);  // internal attrs
        put32(out, 0);  // external attrs
        put32(out, r.offset);
        out.insert(out.end(), r.entry->name.begin(), r.entry->name.end());
    }
    std::size_t central_size = out.size() - central_begin;

    put32(out, kEndSig);
    put16(out, 0);
    put16(out, 0);
    put16(out, static_cast<std::uint16_t>(records.size()));
    put16(out, static_cast<std::uint16_t>(records.size()));
    put32(out, static_cast<std::uint32_t>(central_size));
    put32(out, static_cast<std::uint32_t>(central_begin));
    put16(out, 0);  // comment length
    return out;
}

std::vector<Entry> unpack(const std::vector<std::uint8_t>& archive) {
    if (archive.size() < 22) throw Error("corrupt zip archive: too small");

    // find end-of-central-directory, scanning back over a possible comment
    std::size_t eocd = std::string::npos;
    for (std::size_t i = archive.size() - 22; ; --i) {
        if (get32(archive, i) == kEndSig) {
            eocd = i;
            break;
        }
        if (i == 0 || archive.size() - i > 22 + 0xffff) break;
    }
    if (eocd == std::string::npos) throw Error("corrupt zip archive: no end record");

    std::uint16_t count = get16(archive, eocd + 10);
    std::uint32_t central_off = get32(archive, eocd + 16);

    std::vector<Entry> entries;
    std::size_t pos = central_off;
    for (std::uint16_t i = 0; i < count; ++i) {
        if (pos + 46 > archive.size() || get32(archive, pos) != kCentralSig)
            throw Error("corrupt zip archive: bad central directory");
        std::uint16_t method = get16(archive, pos + 10);
        std::uint32_t comp_size = get32(archive, pos + 20);
        std::uint32_t orig_size = get32(archive, pos + 24);
        std::uint16_t name_len = get16(archive, pos + 28);
        std::uint16_t extra_len = get16(archive, pos + 30);
        std::uint16_t comment_len = get16(archive, pos + 32);
        std::uint32_t local_off = get32(archive, pos + 42);
        if (pos + 46 + name_len > archive.size())
            throw Error("corrupt zip archive: truncated name");
        std::string name(archive.begin() + pos + 46, archive.begin() + pos + 46 + name_len);
        pos += 46 + name_len + extra_len + comment_len;

        if (local_off + 30 > archive.size() || get32(archive, local_off) != kLocalSig)
            throw Error("corrupt zip archive: bad local header");
        std::uint16_t lname = get16(archive, local_off + 26);
        std::uint16_t lextra = get16(archive, local_off + 28);
        std::size_t data_off = local_off + 30 + lname + lextra;
        if (data_off + comp_size > archive.size())
            throw Error("corrupt zip archive: truncated data");

        Entry e;
        e.name = std::move(name);
        if (method == 0) {
            e.data.assign(archive.begin() + data_off, archive.begin() + data_off + comp_size);
        } else if (method == 8) {
            e.data = inflate_raw(archive.data() + data_off, comp_size, orig_size);
        } else {
            throw Error("corrupt zip archive: unsupported compression method");
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

}  // namespace qbank::zip
