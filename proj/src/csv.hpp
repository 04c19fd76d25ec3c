#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace icsrisk::detail {

struct CsvRecord {
    std::vector<std::string> fields;
    int line = 0; // 1-based line the record starts on
};

/// Minimal RFC-4180 reader: quoted fields, doubled quotes, CR/LF line ends,
/// multi-line quoted fields. Blank lines are skipped.
class CsvReader {
public:
    explicit CsvReader(std::string_view text) : text_(text) {}

    /// Next record, or nullopt at end of input. Throws std::runtime_error
    /// on an unterminated quote.
    std::optional<CsvRecord> next();

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

std::string csv_escape(std::string_view field);
std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

} // namespace icsrisk::detail
