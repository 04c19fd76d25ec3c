#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "icsrisk/catalog.hpp"
#include "icsrisk/errors.hpp"
#include "icsrisk/safety.hpp"

namespace icsrisk::analysis {

enum class ProbabilityModel { V31, V2 };

struct Settings {
    ProbabilityModel model = ProbabilityModel::V31;
    bool paper_compat = false; // substitute Adjacent weight for Physical in the probability
    safety::SiTable si_table = safety::SiTable::defaults();
};

class InvalidSettingsError : public Error {
public:
    using Error::Error;
};

struct ReportEntry {
    catalog::AttackScenario scenario;
    safety::ScoreResult score;
};

struct AssessmentReport {
    std::string catalog_name;
    Settings settings;
    std::vector<ReportEntry> entries; // catalog order
};

/// Scores every scenario: base-score breakdown, SI, severity, probability,
/// risk. Deterministic: identical catalog and settings give an identical
/// report, bit for bit.
AssessmentReport assess(const catalog::Catalog& cat, const Settings& settings = {});

enum class GroupBy { Level, Location };

/// Mean severity/risk for one grouping key. Means are arithmetic means of
/// the per-scenario display-rounded (two-decimal) values, kept as exact
/// integer hundredths so aggregation never inherits binary-float noise.
struct AggregateRow {
    std::string key;   // "Level 2" or the location name
    int level = -1;    // set when grouping by level
    int n = 0;
    std::int64_t severity_cents_sum = 0;
    std::int64_t risk_cents_sum = 0;

    double mean_severity() const;
    double mean_risk() const;
    std::int64_t mean_severity_cents() const; // half-up display cents
    std::int64_t mean_risk_cents() const;
};

/// Groups by level (ascending) or by location (first appearance in catalog
/// order, which is also how the reference summary table is laid out).
std::vector<AggregateRow> aggregate(const AssessmentReport& report, GroupBy by);

enum class RankMetric { Severity, Risk };

struct Ranking {
    std::vector<std::string> keys;               // descending by the metric
    std::vector<std::vector<std::string>> ties;  // groups of keys with equal metric
};

/// Descending sort by the chosen metric; ties broken by ascending level or
/// lexical location name and reported alongside the ordering.
Ranking rank(const std::vector<AggregateRow>& rows, RankMetric metric);

struct Expectation {
    std::string table;  // "scenario" (one catalog row) or "summary" (an aggregate cell)
    std::string ref;    // scenario id, or "level:N" / "location:NAME"
    std::string metric; // "severity" | "probability" | "risk"
    double expected = 0.0;
    std::int64_t expected_cents = 0;
    bool erratum = false; // published value known not to reproduce
};

struct ExpectationSet {
    std::vector<Expectation> rows;
};

class ExpectationError : public Error {
public:
    using Error::Error;
};

class UnknownReferenceError : public Error {
public:
    using Error::Error;
};

ExpectationSet load_expectations(const std::filesystem::path& path);
ExpectationSet load_expectations_text(std::string_view text, std::string_view source);

/// Expected values for the bundled CSTR catalog, with erratum flags.
const ExpectationSet& builtin_expectations();

enum class Verdict { Match, Mismatch };

struct AuditFinding {
    std::string table;
    std::string ref;
    std::string metric;
    double expected = 0.0;
    double computed = 0.0;
    double delta = 0.0; // computed - expected
    Verdict verdict = Verdict::Match;
    bool erratum = false;
};

/// Diffs the report against an expectation set, one finding per expected
/// cell; Match iff |computed - expected| <= 0.005 (two-decimal agreement).
///
/// Per-scenario ("scenario") cells compare the report's computed values with
/// the published ones. Aggregate ("summary") cells check the published
/// summary against the mean of the published per-scenario values, so a
/// published row already flagged as an erratum does not double-count as an
/// erratum of the summary arithmetic too.
std::vector<AuditFinding> audit(const AssessmentReport& report, const ExpectationSet& expected);

/// True when every non-erratum cell matches and every erratum cell
/// mismatches exactly as flagged.
bool audit_clean(const std::vector<AuditFinding>& findings);

} // namespace icsrisk::analysis
