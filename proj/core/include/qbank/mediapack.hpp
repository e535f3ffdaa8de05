#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qbank/model.hpp"

namespace qbank {

inline constexpr std::string_view kDefaultMediaFolder = "images";

// Names from <img src="..."> tags in the given text, in order of first
// appearance, without duplicates.
std::vector<std::string> scan_image_names(std::string_view text);

// Image names referenced anywhere in one question: stem, answers, matching
// pairs and extra responses.
std::vector<std::string> scan_question_media_names(const Question& q);

struct MediaSite {
    std::size_t question = 0;
    // -1 for the stem, otherwise the answer ordinal the tag sits in
    int answer = -1;
};

struct CollectedMediaRef {
    std::string name;
    std::vector<MediaSite> referenced_from;
};

// Scans every stem and answer text for image tags. No file I/O.
std::vector<CollectedMediaRef> collect_media_refs(const QuestionBank& bank);

// Builds the GIFT-with-media archive: the GIFT file at the root, every
// referenced image under `folder`. Lookups into media_dir are exact and
// case sensitive; in-model payloads take precedence over the directory.
// Throws Error on unresolved or case-colliding names, and when the bank
// has no media at all.
std::vector<std::uint8_t> bundle_gift_media(const QuestionBank& bank,
                                            const std::filesystem::path& media_dir,
                                            std::string_view folder = kDefaultMediaFolder);

struct UnbundleResult {
    QuestionBank bank;
    std::vector<MediaRef> media;  // payload-bearing refs from the archive
};

// Inverse of bundle_gift_media: parses the single root-level GIFT file and
// attaches payloads to the questions' media refs. Dangling references
// become warning diagnostics.
UnbundleResult unbundle_gift_media(const std::vector<std::uint8_t>& archive);

}  // namespace qbank
