#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qbank/capability.hpp"
#include "qbank/model.hpp"

namespace qbank {

enum class ConversionMode { strict, lossy };
enum class OnUnsupported { fail, skip_with_warning };

struct ConversionPolicy {
    ConversionMode mode = ConversionMode::strict;
    OnUnsupported on_unsupported = OnUnsupported::fail;

    static ConversionPolicy strict() { return {ConversionMode::strict, OnUnsupported::fail}; }
    static ConversionPolicy lossy() {
        return {ConversionMode::lossy, OnUnsupported::skip_with_warning};
    }
};

struct SkippedQuestion {
    std::size_t index;
    std::string reason;
};

struct ConversionReport {
    std::size_t converted = 0;
    std::vector<SkippedQuestion> skipped;
    std::vector<Diagnostic> warnings;
};

struct ConversionResult {
    std::string text;                    // for plain-text outputs
    std::vector<std::uint8_t> archive;   // for GIFT-with-media zips
    bool is_archive = false;
    ConversionReport report;
};

struct ConvertOptions {
    // Where image files live, for GIFT targets that must bundle a zip.
    std::optional<std::filesystem::path> media_dir;
    std::string media_folder = "images";
};

// Converts the bank to the target format under the per-format capability
// matrix. Strict mode fails atomically (throws CapabilityError) on the
// first unsupported question; lossy mode skips it and records the reason.
ConversionResult convert(const QuestionBank& bank, Format target,
                         const ConversionPolicy& policy, const ConvertOptions& options = {});

}  // namespace qbank
