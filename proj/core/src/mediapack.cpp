#include "qbank/mediapack.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "qbank/gift.hpp"
#include "qbank/zipfile.hpp"

namespace qbank {

namespace {

constexpr std::string_view kGiftEntryName = "questions.gift";

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Strips a leading "folder/" prefix so that src="images/x.png" and the
// bare "x.png" name the same stored file.
std::string strip_folder(std::string_view name, std::string_view folder) {
    std::string prefix = std::string(folder) + "/";
    if (name.size() > prefix.size() && name.substr(0, prefix.size()) == prefix)
        return std::string(name.substr(prefix.size()));
    return std::string(name);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

}  // namespace

std::vector<std::string> scan_image_names(std::string_view text) {
    std::vector<std::string> names;
    std::string low = lower(text);
    std::size_t pos = 0;
    while ((pos = low.find("<img", pos)) != std::string::npos) {
        std::size_t end = low.find('>', pos);
        if (end == std::string::npos) break;
        std::size_t src = low.find("src", pos);
        if (src != std::string::npos && src < end) {
            std::size_t eq = text.find('=', src);
            if (eq != std::string_view::npos && eq < end) {
                std::size_t v = eq + 1;
                while (v < end && std::isspace(static_cast<unsigned char>(text[v]))) ++v;
                std::string value;
                if (v < end && (text[v] == '"' || text[v] == '\'')) {
                    char quote = text[v++];
                    std::size_t close = text.find(quote, v);
                    if (close != std::string_view::npos && close <= end)
                        value = std::string(text.substr(v, close - v));
                } else {
                    std::size_t e = v;
                    while (e < end && !std::isspace(static_cast<unsigned char>(text[e])))
                        ++e;
                    value = std::string(text.substr(v, e - v));
                }
                if (!value.empty() &&
                    std::find(names.begin(), names.end(), value) == names.end())
                    names.push_back(std::move(value));
            }
        }
        pos = end + 1;
    }
    return names;
}

std::vector<std::string> scan_question_media_names(const Question& q) {
    std::vector<std::string> names;
    auto add = [&](std::string_view text) {
        for (auto& name : scan_image_names(text))
            if (std::find(names.begin(), names.end(), name) == names.end())
                names.push_back(std::move(name));
    };
    add(q.stem);
    if (const auto* mc = std::get_if<MultipleChoiceBody>(&q.body))
        for (const auto& a : mc->answers) add(a.text);
    if (const auto* sa = std::get_if<ShortAnswerBody>(&q.body))
        for (const auto& a : sa->answers) add(a.text);
    if (const auto* m = std::get_if<MatchingBody>(&q.body)) {
        for (const auto& p : m->pairs) {
            add(p.premise);
            add(p.response);
        }
        for (const auto& r : m->extra_responses) add(r);
    }
    return names;
}

std::vector<CollectedMediaRef> collect_media_refs(const QuestionBank& bank) {
    std::vector<CollectedMediaRef> refs;
    auto note = [&](const std::string& name, MediaSite site) {
        for (auto& r : refs) {
            if (r.name == name) {
                r.referenced_from.push_back(site);
                return;
            }
        }
        refs.push_back({name, {site}});
    };
    for (std::size_t qi = 0; qi < bank.questions.size(); ++qi) {
        const Question& q = bank.questions[qi];
        for (const auto& name : scan_image_names(q.stem)) note(name, {qi, -1});
        const std::vector<Answer>* answers = nullptr;
        if (const auto* mc = std::get_if<MultipleChoiceBody>(&q.body)) answers = &mc->answers;
        if (const auto* sa = std::get_if<ShortAnswerBody>(&q.body)) answers = &sa->answers;
        if (answers) {
            for (std::size_t ai = 0; ai < answers->size(); ++ai)
                for (const auto& name : scan_image_names((*answers)[ai].text))
                    note(name, {qi, static_cast<int>(ai)});
        }
    }
    return refs;
}

std::vector<std::uint8_t> bundle_gift_media(const QuestionBank& bank,
                                            const std::filesystem::path& media_dir,
                                            std::string_view folder) {
    std::vector<CollectedMediaRef> refs = collect_media_refs(bank);
    if (refs.empty())
        throw Error("bank references no media; emit plain GIFT text instead of a zip");

    // case-sensitivity hazard: names that collide when case-folded
    for (std::size_t i = 0; i < refs.size(); ++i)
        for (std::size_t j = i + 1; j < refs.size(); ++j)
            if (lower(refs[i].name) == lower(refs[j].name))
                throw Error("media names differ only by case: '" + refs[i].name + "' vs '" +
                            refs[j].name + "'");

    struct Resolved {
        std::string stored;  // path under the media folder
        std::vector<std::uint8_t> data;
    };
    std::vector<Resolved> resolved;
    std::string missing;
    for (const auto& ref : refs) {
        std::string stored = strip_folder(ref.name, folder);

        // in-model payloads win over the directory
        const std::vector<std::uint8_t>* payload = nullptr;
        for (const auto& q : bank.questions)
            for (const auto& m : q.media)
                if (m.name == ref.name && m.payload) payload = &*m.payload;
        if (payload) {
            resolved.push_back({stored, *payload});
            continue;
        }

        std::filesystem::path file = media_dir / stored;
        bool exists = std::filesystem::exists(file);
        if (exists) {
            // std::filesystem::exists may be case-insensitive on some
            // filesystems; require an exact directory-entry match.
            bool exact = false;
            for (auto& entry : std::filesystem::directory_iterator(file.parent_path()))
                if (entry.path().filename().string() ==
                    std::filesystem::path(stored).filename().string())
                    exact = true;
            exists = exact;
        }
        if (!exists) {
            if (!missing.empty()) missing += ", ";
            missing += ref.name;
            continue;
        }
        resolved.push_back({stored, read_file(file)});
    }
    if (!missing.empty()) throw Error("unresolved media references: " + missing);

    std::sort(resolved.begin(), resolved.end(),
              [](const Resolved& a, const Resolved& b) { return a.stored < b.stored; });

    std::vector<zip::Entry> entries;
    entries.push_back({std::string(kGiftEntryName),
                       [&] {
                           std::string text = emit_gift(bank);
                           return std::vector<std::uint8_t>(text.begin(), text.end());
                       }()});
    for (auto& r : resolved)
        entries.push_back({std::string(folder) + "/" + r.stored, std::move(r.data)});
    return zip::pack(entries);
}

UnbundleResult unbundle_gift_media(const std::vector<std::uint8_t>& archive) {
    std::vector<zip::Entry> entries = zip::unpack(archive);

    const zip::Entry* gift_entry = nullptr;
    std::size_t root_files = 0;
    for (const auto& e : entries) {
        if (e.name.find('/') == std::string::npos && !e.name.empty() && e.name.back() != '/') {
            ++root_files;
            gift_entry = &e;
        }
    }
    if (root_files != 1)
        throw Error("archive must contain exactly one root-level questions file, found " +
                    std::to_string(root_files));

    UnbundleResult out;
    out.bank = parse_gift(std::string(gift_entry->data.begin(), gift_entry->data.end()));

    for (const auto& e : entries) {
        if (&e == gift_entry || (!e.name.empty() && e.name.back() == '/')) continue;
        out.media.push_back({e.name, e.data});
    }

    // attach payloads to the questions' refs
    for (auto& q : out.bank.questions) {
        for (auto& ref : q.media) {
            bool found = false;
            for (const auto& m : out.media) {
                std::string_view path = m.name;
                std::string_view tail = path;
                if (auto slash = path.find('/'); slash != std::string_view::npos)
                    tail = path.substr(slash + 1);
                if (ref.name == path || ref.name == tail ||
                    strip_folder(ref.name, path.substr(0, path.find('/'))) == tail) {
                    ref.payload = m.payload;
                    found = true;
                    break;
                }
            }
            if (!found)
                out.bank.diagnostics.push_back(
                    {Severity::warning, q.source_line > 0 ? q.source_line : 1, 1,
                     "media.dangling-ref",
                     "no archive entry for referenced image '" + ref.name + "'"});
        }
    }
    return out;
}

}  // namespace qbank
