#pragma once

#include <map>
#include <optional>
#include <string>

#include "qbank/model.hpp"

namespace qbank {

enum class Format { aiken, gift, moodlexml };

std::string_view format_name(Format f);
std::optional<Format> format_from_name(std::string_view name);

enum class Feature { media, titles, weights, feedback };

// Which question kinds and features each format can carry.
struct FormatCapability {
    Format format;
    std::map<QuestionKind, bool> kinds;
    std::map<Feature, bool> features;
    bool media_requires_zip = false;
};

const FormatCapability& capability_of(Format f);

struct CapabilityCheck {
    bool supported = true;
    std::optional<std::string> reason;
    bool media_needs_zip = false;
};

CapabilityCheck capability_check(const Question& q, Format target);

}  // namespace qbank
