#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "icsrisk/analysis.hpp"
#include "icsrisk/errors.hpp"

namespace icsrisk::render {

enum class Format { Table, Csv, Json, Markdown };

class FormatError : public Error {
public:
    using Error::Error;
};

Format parse_format(std::string_view text); // throws FormatError
std::string_view to_string(Format f);

/// Optional safety block for single-vector output.
struct LevelDetail {
    int level = 0;
    double si = 0.0;
    double severity = 0.0;
    double probability = 0.0;
    double risk = 0.0;
};

std::string score(const cvss::MetricVector& v, const cvss::ScoreBreakdown& b,
                  const std::optional<LevelDetail>& detail, Format format);

/// Per-scenario report. csv carries display-rounded values; json carries the
/// same display values plus full-precision twins; markdown mirrors the
/// reference table's column order (No., AV..Scope, Probability, Severity,
/// Risk) so output can be diffed against it.
std::string report(const analysis::AssessmentReport& report, Format format);

struct RankedBy {
    analysis::RankMetric metric;
    analysis::Ranking ranking;
};

std::string aggregates(const std::vector<analysis::AggregateRow>& rows, analysis::GroupBy by,
                       const std::optional<RankedBy>& ranked, Format format);

std::string findings(const std::vector<analysis::AuditFinding>& findings, Format format);

} // namespace icsrisk::render
