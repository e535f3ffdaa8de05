#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qbank::zip {

struct Entry {
    std::string name;  // forward-slash path
    std::vector<std::uint8_t> data;
};

// Deterministic archive writer: fixed timestamps, entries stored in the
// order given, store for payloads under 1 KiB and deflate otherwise.
std::vector<std::uint8_t> pack(const std::vector<Entry>& entries);

// Reads a zip archive via its central directory. Throws qbank::Error on a
// corrupt archive.
std::vector<Entry> unpack(const std::vector<std::uint8_t>& archive);

}  // namespace qbank::zip
