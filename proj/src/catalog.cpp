#include "icsrisk/catalog.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "builtin_data.hpp"
#include "csv.hpp"

namespace icsrisk::catalog {

namespace {

constexpr std::string_view kHeader[] = {"id",     "level",  "location", "title",
                                        "vector", "failure", "consequence"};
constexpr std::size_t kFieldCount = std::size(kHeader);

int parse_int(const std::string& text, int line, std::string_view what) {
    try {
        std::size_t idx = 0;
        const int value = std::stoi(detail::trim(text), &idx);
        if (idx != detail::trim(text).size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw CatalogError(CatalogErrorKind::RowError, line,
                           "Bad" + std::string(what) + " \"" + text + "\"");
    }
}

} // namespace

CatalogError::CatalogError(CatalogErrorKind kind, int line, const std::string& message)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      kind_(kind),
      line_(line) {}

LoadedCatalog load_catalog(const std::filesystem::path& path, LoadMode mode,
                           const taxonomy::Taxonomy& tax) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CatalogError(CatalogErrorKind::FileUnreadable, 0,
                           "FileUnreadable " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_catalog_text(buf.str(), path.stem().string(), mode, tax);
}

LoadedCatalog load_catalog_text(std::string_view text, std::string_view name, LoadMode mode,
                                const taxonomy::Taxonomy& tax) {
    LoadedCatalog out;
    out.catalog.name = std::string(name);

    detail::CsvReader reader(text);
    bool header_seen = false;
    int last_id = 0;
    std::set<int> ids;

    while (true) {
        std::optional<detail::CsvRecord> rec;
        try {
            rec = reader.next();
        } catch (const std::exception& e) {
            throw CatalogError(CatalogErrorKind::RowError, 0, e.what());
        }
        if (!rec) break;

        if (!header_seen) {
            // Comment lines are only recognized before the header.
            if (!rec->fields.empty() && !rec->fields[0].empty() && rec->fields[0][0] == '#') {
                continue;
            }
            if (rec->fields.size() != kFieldCount) {
                throw CatalogError(CatalogErrorKind::BadHeader, rec->line,
                                   "BadHeader: expected " + std::to_string(kFieldCount) +
                                       " columns, got " + std::to_string(rec->fields.size()));
            }
            for (std::size_t i = 0; i < kFieldCount; ++i) {
                if (detail::to_lower(detail::trim(rec->fields[i])) != kHeader[i]) {
                    throw CatalogError(CatalogErrorKind::BadHeader, rec->line,
                                       "BadHeader: column " + std::to_string(i + 1) +
                                           " is \"" + rec->fields[i] + "\", expected \"" +
                                           std::string(kHeader[i]) + "\"");
                }
            }
            header_seen = true;
            continue;
        }

        if (rec->fields.size() != kFieldCount) {
            throw CatalogError(CatalogErrorKind::RowError, rec->line,
                               "FieldCount: expected " + std::to_string(kFieldCount) +
                                   " fields, got " + std::to_string(rec->fields.size()));
        }

        AttackScenario s;
        s.id = parse_int(rec->fields[0], rec->line, "Id");
        if (s.id <= 0) {
            throw CatalogError(CatalogErrorKind::RowError, rec->line,
                               "BadId " + std::to_string(s.id) + ": must be positive");
        }
        if (ids.count(s.id) != 0) {
            throw CatalogError(CatalogErrorKind::RowError, rec->line,
                               "DuplicateId " + std::to_string(s.id));
        }
        if (s.id <= last_id) {
            throw CatalogError(CatalogErrorKind::RowError, rec->line,
                               "IdOrder: id " + std::to_string(s.id) +
                                   " not increasing (previous " + std::to_string(last_id) + ")");
        }
        s.level = parse_int(rec->fields[1], rec->line, "Level");
        if (s.level < 0 || s.level > 4) {
            throw CatalogError(CatalogErrorKind::RowError, rec->line,
                               "BadLevel " + std::to_string(s.level) + ": outside 0..4");
        }
        s.location = detail::trim(rec->fields[2]);
        s.title = rec->fields[3];
        try {
            s.vector = cvss::parse_vector(detail::trim(rec->fields[4]));
        } catch (const cvss::ParseError& e) {
            throw CatalogError(CatalogErrorKind::RowError, rec->line,
                               std::string("BadVector: ") + e.what());
        }
        s.failure = rec->fields[5];
        s.consequence = rec->fields[6];

        // Location must resolve in the taxonomy at the row's level.
        bool resolved = false;
        for (const auto& loc : tax.resolve(s.location)) {
            if (loc.level == s.level) { resolved = true; break; }
        }
        if (!resolved) {
            if (mode == LoadMode::Strict) {
                throw CatalogError(CatalogErrorKind::UnknownLocation, rec->line,
                                   "UnknownLocation \"" + s.location + "\" at level " +
                                       std::to_string(s.level));
            }
            out.warnings.push_back("line " + std::to_string(rec->line) +
                                   ": unresolved location \"" + s.location + "\" at level " +
                                   std::to_string(s.level));
        }

        ids.insert(s.id);
        last_id = s.id;
        out.catalog.scenarios.push_back(std::move(s));
    }

    if (!header_seen) {
        throw CatalogError(CatalogErrorKind::BadHeader, 0, "BadHeader: missing header");
    }
    if (out.catalog.scenarios.empty()) {
        throw CatalogError(CatalogErrorKind::RowError, 0, "empty catalog");
    }
    return out;
}

void write_catalog(const Catalog& cat, std::ostream& out) {
    out << "id,level,location,title,vector,failure,consequence\n";
    for (const auto& s : cat.scenarios) {
        out << s.id << ',' << s.level << ',' << detail::csv_escape(s.location) << ','
            << detail::csv_escape(s.title) << ',' << cvss::render_vector(s.vector) << ','
            << detail::csv_escape(s.failure) << ',' << detail::csv_escape(s.consequence) << '\n';
    }
}

std::string write_catalog(const Catalog& cat) {
    std::ostringstream out;
    write_catalog(cat, out);
    return out.str();
}

const Catalog& builtin_cstr_catalog() {
    static const Catalog cat = [] {
        auto loaded = load_catalog_text(detail::kCstrCatalogCsv, "CSTR", LoadMode::Strict);
        return std::move(loaded.catalog);
    }();
    return cat;
}

} // namespace icsrisk::catalog
