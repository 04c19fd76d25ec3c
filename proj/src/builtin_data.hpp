#pragma once

#include <string_view>

// Bundled data files, embedded at build time from data/*.csv.
namespace icsrisk::detail {

extern const std::string_view kTaxonomyCsv;
extern const std::string_view kAttackFrameCsv;
extern const std::string_view kCstrCatalogCsv;
extern const std::string_view kCstrExpectedCsv;

} // namespace icsrisk::detail
