#include "mf2scf/interchange.hpp"

#include <fstream>
#include <sstream>

#include "mf2scf/errors.hpp"
#include "mf2scf/text_format.hpp"

namespace mf2scf {

const DeepFeatureRecord* DeepFeatureFile::find(const std::string& image_id) const {
    for (const auto& r : records) {
        if (r.image_id == image_id) {
            return &r;
        }
    }
    return nullptr;
}

DeepFeatureFile parse_deep_features(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("deep feature file is empty");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    DeepFeatureFile file;
    const auto header = text::split(line, ' ');
    if (header.size() < 3 || header[0] != "MF2SCF-F1" || header[1] != "v1" || header[2].substr(0, 4) != "dim=") {
        throw FormatError("line 1: expected 'MF2SCF-F1 v1 dim=<d>'");
    }
    file.dim = static_cast<std::size_t>(text::parse_int(header[2].substr(4)));
    for (std::size_t i = 3; i < header.size(); ++i) {
        const auto eq = header[i].find('=');
        if (eq == std::string_view::npos) {
            throw FormatError("line 1: metadata token '" + std::string(header[i]) + "' is not key=value");
        }
        file.metadata.emplace(std::string(header[i].substr(0, eq)), std::string(header[i].substr(eq + 1)));
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = text::split(line, ',');
        if (fields.size() != file.dim + 2) {
            throw FormatError("line " + std::to_string(line_no) + ": " + std::to_string(fields.size() - 2) +
                              " values, header says " + std::to_string(file.dim));
        }
        DeepFeatureRecord rec{std::string(fields[0]), std::string(fields[1]), {}};
        rec.values.reserve(file.dim);
        try {
            for (std::size_t i = 2; i < fields.size(); ++i) {
                rec.values.push_back(text::parse_double(fields[i]));
            }
        } catch (const FormatError& e) {
            throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
        }
        file.records.push_back(std::move(rec));
    }
    return file;
}

DeepFeatureFile read_deep_features(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read deep feature file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_deep_features(buf.str());
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::string format_deep_features(const DeepFeatureFile& file) {
    std::string out = "MF2SCF-F1 v1 dim=" + std::to_string(file.dim);
    for (const auto& [key, value] : file.metadata) {
        out += " " + key + "=" + value;
    }
    out += "\n";
    for (const auto& r : file.records) {
        if (r.values.size() != file.dim) {
            throw LayoutMismatch("record '" + r.image_id + "' does not have dim values");
        }
        out += r.image_id + "," + r.class_label;
        for (double v : r.values) {
            out += "," + text::format_double(v);
        }
        out += "\n";
    }
    return out;
}

void write_deep_features(const std::filesystem::path& path, const DeepFeatureFile& file) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw Error("cannot write '" + path.string() + "'");
        }
        out << format_deep_features(file);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace mf2scf
