#include "csv.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace icsrisk::detail {

std::optional<CsvRecord> CsvReader::next() {
    // Skip blank lines.
    while (pos_ < text_.size() && (text_[pos_] == '\n' || text_[pos_] == '\r')) {
        if (text_[pos_] == '\n') ++line_;
        ++pos_;
    }
    if (pos_ >= text_.size()) return std::nullopt;

    CsvRecord rec;
    rec.line = line_;
    std::string field;
    bool in_quotes = false;

    while (pos_ < text_.size()) {
        char ch = text_[pos_];
        if (in_quotes) {
            if (ch == '"') {
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
                    field.push_back('"');
                    pos_ += 2;
                } else {
                    in_quotes = false;
                    ++pos_;
                }
            } else {
                if (ch == '\n') ++line_;
                field.push_back(ch);
                ++pos_;
            }
            continue;
        }
        switch (ch) {
        case '"':
            in_quotes = true;
            ++pos_;
            break;
        case ',':
            rec.fields.push_back(std::move(field));
            field.clear();
            ++pos_;
            break;
        case '\r':
            ++pos_;
            break;
        case '\n':
            ++line_;
            ++pos_;
            rec.fields.push_back(std::move(field));
            return rec;
        default:
            field.push_back(ch);
            ++pos_;
        }
    }
    if (in_quotes) {
        throw std::runtime_error("unterminated quote in record starting at line " +
                                 std::to_string(rec.line));
    }
    rec.fields.push_back(std::move(field));
    return rec;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t");
    return std::string(s.substr(begin, end - begin + 1));
}

} // namespace icsrisk::detail
