// qbank: convert, validate, inspect and bundle Moodle question-bank files
// in Aiken, GIFT and Moodle XML formats.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbank/aiken.hpp"
#include "qbank/convert.hpp"
#include "qbank/gift.hpp"
#include "qbank/mediapack.hpp"
#include "qbank/moodlexml.hpp"
#include "qbank/validate.hpp"

namespace {

namespace fs = std::filesystem;
using namespace qbank;

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;  // validation errors or lossy skips
constexpr int kExitFailure = 2;   // usage, I/O, strict-mode refusal

struct Input {
    std::string path;          // "-" for stdin
    std::vector<std::uint8_t> bytes;
    bool is_zip = false;
};

std::string severity_name(Severity s) {
    switch (s) {
        case Severity::error: return "ERROR";
        case Severity::warning: return "WARNING";
        case Severity::info: return "INFO";
    }
    return "?";
}

void print_diagnostics(const std::string& file, const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        std::cerr << severity_name(d.severity) << ' ' << file << ':' << std::max(d.line, 1)
                  << ':' << std::max(d.column, 1) << ' ' << d.code << ' ' << d.message
                  << '\n';
}

Input read_input(const std::string& path) {
    Input in;
    in.path = path;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        std::string s = ss.str();
        in.bytes.assign(s.begin(), s.end());
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw Error("cannot read " + path);
        in.bytes.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    in.is_zip = in.bytes.size() >= 4 && in.bytes[0] == 'P' && in.bytes[1] == 'K';
    return in;
}

std::optional<Format> detect_format(const std::string& path) {
    fs::path p(path);
    std::string ext = p.extension().string();
    if (ext == ".xml") return Format::moodlexml;
    if (ext == ".zip") return Format::gift;  // gift-with-media archive
    return std::nullopt;
}

// Parses the input in the given (or detected) format.
QuestionBank load_bank(const Input& in, std::optional<Format> from) {
    std::string ext = fs::path(in.path).extension().string();
    if (ext == ".zip" || (!from && in.is_zip)) {
        UnbundleResult unbundled = unbundle_gift_media(in.bytes);
        return std::move(unbundled.bank);
    }
    if (!from) from = detect_format(in.path);
    if (!from)
        throw Error("cannot detect the format of '" + in.path + "'; pass --from");
    std::string text(in.bytes.begin(), in.bytes.end());
    switch (*from) {
        case Format::aiken: return parse_aiken(text);
        case Format::gift: return parse_gift(text);
        case Format::moodlexml: return parse_moodlexml(text);
    }
    throw Error("unreachable");
}

void write_output(const std::string& path, const void* data, std::size_t size) {
    if (path.empty() || path == "-") {
        std::cout.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

std::optional<fs::path> default_media_dir() {
    if (const char* env = std::getenv("QBANK_MEDIA_DIR")) return fs::path(env);
    return std::nullopt;
}

int run(int argc, char** argv) {
    CLI::App app{"Moodle question bank toolkit (Aiken, GIFT, Moodle XML)"};
    app.require_subcommand(1);

    std::string input_path, output_path, from_name, to_name, media_dir, media_folder = "images";
    bool lossy = false;

    auto add_common = [&](CLI::App* cmd, bool with_from) {
        cmd->add_option("input", input_path, "input file, or - for stdin")->required();
        if (with_from)
            cmd->add_option("--from", from_name, "input format: aiken, gift, moodlexml");
    };

    CLI::App* convert_cmd = app.add_subcommand("convert", "convert between formats");
    add_common(convert_cmd, true);
    convert_cmd->add_option("--to", to_name, "target format")->required();
    convert_cmd->add_option("-o,--output", output_path, "output file (default stdout)");
    convert_cmd->add_flag("--lossy", lossy, "skip unsupported questions with a warning");
    convert_cmd->add_option("--media-dir", media_dir, "directory holding referenced images");
    convert_cmd->add_option("--media-folder", media_folder, "media folder name inside the zip");

    CLI::App* validate_cmd = app.add_subcommand("validate", "report invariant violations");
    add_common(validate_cmd, true);

    CLI::App* inspect_cmd = app.add_subcommand("inspect", "print question and media counts");
    add_common(inspect_cmd, true);

    CLI::App* bundle_cmd = app.add_subcommand("bundle", "pack GIFT questions and images into a zip");
    add_common(bundle_cmd, true);
    bundle_cmd->add_option("-o,--output", output_path, "output archive (default stdout)");
    bundle_cmd->add_option("--media-dir", media_dir, "directory holding referenced images");
    bundle_cmd->add_option("--media-folder", media_folder, "media folder name inside the zip");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitFailure;
    }

    std::optional<Format> from;
    if (!from_name.empty()) {
        from = format_from_name(from_name);
        if (!from) {
            std::cerr << "error: unknown format '" << from_name << "'\n";
            return kExitFailure;
        }
    }
    if (input_path == "-" && !from) {
        std::cerr << "error: --from is required when reading standard input\n";
        return kExitFailure;
    }

    try {
        Input in = read_input(input_path);
        QuestionBank bank = load_bank(in, from);
        print_diagnostics(in.path, bank.diagnostics);
        std::vector<Diagnostic> findings = validate(bank);
        bool had_errors = has_errors(bank.diagnostics) || has_errors(findings);

        if (app.got_subcommand(validate_cmd)) {
            print_diagnostics(in.path, findings);
            return had_errors ? kExitFindings : kExitOk;
        }

        if (app.got_subcommand(inspect_cmd)) {
            std::size_t counts[6] = {};
            for (const auto& q : bank.questions)
                ++counts[static_cast<int>(kind_of(q.body))];
            for (int k = 0; k < 6; ++k)
                std::cout << kind_name(static_cast<QuestionKind>(k)) << ": " << counts[k]
                          << '\n';
            std::cout << "media: " << collect_media_refs(bank).size() << '\n';
            return had_errors ? kExitFindings : kExitOk;
        }

        if (app.got_subcommand(bundle_cmd)) {
            auto dir = media_dir.empty() ? default_media_dir() : fs::path(media_dir);
            std::vector<std::uint8_t> archive =
                bundle_gift_media(bank, dir.value_or(fs::path{}), media_folder);
            write_output(output_path, archive.data(), archive.size());
            return had_errors ? kExitFindings : kExitOk;
        }

        // convert
        std::optional<Format> to = format_from_name(to_name);
        if (!to) {
            std::cerr << "error: unknown format '" << to_name << "'\n";
            return kExitFailure;
        }
        if (had_errors) {
            print_diagnostics(in.path, findings);
            std::cerr << "error: input has validation errors; not converting\n";
            return kExitFindings;
        }

        ConvertOptions options;
        options.media_folder = media_folder;
        if (!media_dir.empty())
            options.media_dir = fs::path(media_dir);
        else if (auto dir = default_media_dir())
            options.media_dir = dir;

        ConversionResult result = convert(
            bank, *to, lossy ? ConversionPolicy::lossy() : ConversionPolicy::strict(),
            options);

        if (result.is_archive)
            write_output(output_path, result.archive.data(), result.archive.size());
        else
            write_output(output_path, result.text.data(), result.text.size());

        print_diagnostics(in.path, result.report.warnings);
        std::cerr << "converted " << result.report.converted << " question(s)";
        if (!result.report.skipped.empty())
            std::cerr << ", skipped " << result.report.skipped.size();
        std::cerr << '\n';
        return result.report.skipped.empty() ? kExitOk : kExitFindings;
    } catch (const CapabilityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
