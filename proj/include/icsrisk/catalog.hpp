#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "icsrisk/cvss.hpp"
#include "icsrisk/errors.hpp"
#include "icsrisk/taxonomy.hpp"

namespace icsrisk::catalog {

struct AttackScenario {
    int id = 0;          // positive, unique within a catalog
    int level = 0;       // PERA level 0..4
    std::string location;
    std::string title;
    cvss::MetricVector vector;
    std::string failure;
    std::string consequence;

    bool operator==(const AttackScenario&) const = default;
};

struct Catalog {
    std::string name;
    std::vector<AttackScenario> scenarios; // ids strictly increasing
};

enum class LoadMode { Strict, Lenient };

enum class CatalogErrorKind { FileUnreadable, BadHeader, RowError, UnknownLocation };

class CatalogError : public Error {
public:
    CatalogError(CatalogErrorKind kind, int line, const std::string& message);
    CatalogErrorKind kind() const { return kind_; }
    int line() const { return line_; } // 1-based file line, 0 if not line-bound

private:
    CatalogErrorKind kind_;
    int line_;
};

struct LoadedCatalog {
    Catalog catalog;
    std::vector<std::string> warnings; // lenient mode only
};

/// Loads a catalog CSV (header id,level,location,title,vector,failure,
/// consequence; '#' comment lines allowed before the header). Strict mode
/// requires every location to resolve in the taxonomy at the row's level;
/// lenient mode keeps such rows and records a warning instead.
LoadedCatalog load_catalog(const std::filesystem::path& path, LoadMode mode,
                           const taxonomy::Taxonomy& tax = taxonomy::builtin_taxonomy());
LoadedCatalog load_catalog_text(std::string_view text, std::string_view name, LoadMode mode,
                                const taxonomy::Taxonomy& tax = taxonomy::builtin_taxonomy());

void write_catalog(const Catalog& cat, std::ostream& out);
std::string write_catalog(const Catalog& cat);

/// The bundled 30-scenario CSTR case study. Validated strictly against the
/// builtin taxonomy on first use.
const Catalog& builtin_cstr_catalog();

} // namespace icsrisk::catalog
