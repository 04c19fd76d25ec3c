#include "icsrisk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "builtin_data.hpp"
#include "csv.hpp"
#include "icsrisk/rounding.hpp"

namespace icsrisk::analysis {

namespace {

// Two-decimal agreement; the epsilon absorbs binary representation noise at
// the exact +/-0.005 boundary (e.g. a mean of 0.615 against 0.62).
constexpr double kTolerance = 0.005 + 1e-9;

std::string level_key(int level) {
    return "Level " + std::to_string(level);
}

} // namespace

AssessmentReport assess(const catalog::Catalog& cat, const Settings& settings) {
    if (settings.model == ProbabilityModel::V2) {
        throw InvalidSettingsError(
            "InvalidSettings: catalog vectors are CVSS v3.1; the v2 probability model needs "
            "v2 access/authentication metrics, and no mapping from v3.1 is assumed");
    }
    AssessmentReport report;
    report.catalog_name = cat.name;
    report.settings = settings;
    report.entries.reserve(cat.scenarios.size());
    for (const auto& scenario : cat.scenarios) {
        ReportEntry entry;
        entry.scenario = scenario;
        auto& score = entry.score;
        score.scenario_id = scenario.id;
        score.breakdown = cvss::base_score(scenario.vector);
        score.si = safety::safety_impact(scenario.level, settings.si_table);
        score.severity = score.si * score.breakdown.base_score;
        score.probability = safety::probability_v31(scenario.vector, settings.paper_compat);
        score.risk = safety::risk(score.probability, score.severity);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

double AggregateRow::mean_severity() const {
    return static_cast<double>(severity_cents_sum) / (100.0 * n);
}

double AggregateRow::mean_risk() const {
    return static_cast<double>(risk_cents_sum) / (100.0 * n);
}

std::int64_t AggregateRow::mean_severity_cents() const {
    return half_up_div(severity_cents_sum, n);
}

std::int64_t AggregateRow::mean_risk_cents() const {
    return half_up_div(risk_cents_sum, n);
}

std::vector<AggregateRow> aggregate(const AssessmentReport& report, GroupBy by) {
    std::vector<AggregateRow> rows;
    std::map<std::string, std::size_t> index; // key -> position in rows

    for (const auto& entry : report.entries) {
        const std::string key = by == GroupBy::Level ? level_key(entry.scenario.level)
                                                     : entry.scenario.location;
        auto [it, inserted] = index.emplace(key, rows.size());
        if (inserted) {
            AggregateRow row;
            row.key = key;
            if (by == GroupBy::Level) row.level = entry.scenario.level;
            rows.push_back(std::move(row));
        }
        auto& row = rows[it->second];
        row.n += 1;
        row.severity_cents_sum += to_display_cents(entry.score.severity);
        row.risk_cents_sum += to_display_cents(entry.score.risk);
    }

    if (by == GroupBy::Level) {
        std::sort(rows.begin(), rows.end(),
                  [](const AggregateRow& a, const AggregateRow& b) { return a.level < b.level; });
    }
    // Location rows keep first-appearance order, matching the reference
    // summary layout.
    return rows;
}

Ranking rank(const std::vector<AggregateRow>& rows, RankMetric metric) {
    const auto sum_of = [metric](const AggregateRow& r) {
        return metric == RankMetric::Severity ? r.severity_cents_sum : r.risk_cents_sum;
    };
    // Exact mean comparison: sum_a/n_a vs sum_b/n_b without division.
    const auto less_mean = [&](const AggregateRow& a, const AggregateRow& b) {
        return sum_of(a) * b.n < sum_of(b) * a.n;
    };
    const auto equal_mean = [&](const AggregateRow& a, const AggregateRow& b) {
        return sum_of(a) * b.n == sum_of(b) * a.n;
    };

    std::vector<const AggregateRow*> order;
    order.reserve(rows.size());
    for (const auto& row : rows) order.push_back(&row);
    std::sort(order.begin(), order.end(), [&](const AggregateRow* a, const AggregateRow* b) {
        if (!equal_mean(*a, *b)) return less_mean(*b, *a); // descending metric
        if (a->level >= 0 && b->level >= 0) return a->level < b->level;
        return a->key < b->key;
    });

    Ranking out;
    for (const auto* row : order) out.keys.push_back(row->key);
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() && equal_mean(*order[i], *order[j])) ++j;
        if (j - i > 1) {
            std::vector<std::string> group;
            for (std::size_t k = i; k < j; ++k) group.push_back(order[k]->key);
            out.ties.push_back(std::move(group));
        }
        i = j;
    }
    return out;
}

ExpectationSet load_expectations_text(std::string_view text, std::string_view source) {
    ExpectationSet set;
    detail::CsvReader reader(text);
    bool header_seen = false;
    while (auto rec = reader.next()) {
        if (!header_seen) {
            if (!rec->fields.empty() && !rec->fields[0].empty() && rec->fields[0][0] == '#') {
                continue;
            }
            if (rec->fields.size() < 5 || detail::to_lower(detail::trim(rec->fields[0])) != "table" ||
                detail::to_lower(detail::trim(rec->fields[1])) != "ref" ||
                detail::to_lower(detail::trim(rec->fields[2])) != "metric" ||
                detail::to_lower(detail::trim(rec->fields[3])) != "expected" ||
                detail::to_lower(detail::trim(rec->fields[4])) != "erratum") {
                throw ExpectationError(std::string(source) + ": line " +
                                       std::to_string(rec->line) +
                                       ": expected header table,ref,metric,expected,erratum");
            }
            header_seen = true;
            continue;
        }
        if (rec->fields.size() != 5) {
            throw ExpectationError(std::string(source) + ": line " + std::to_string(rec->line) +
                                   ": expected 5 fields");
        }
        Expectation e;
        e.table = detail::to_lower(detail::trim(rec->fields[0]));
        if (e.table != "scenario" && e.table != "summary") {
            throw ExpectationError(std::string(source) + ": line " + std::to_string(rec->line) +
                                   ": unknown table \"" + rec->fields[0] + "\"");
        }
        e.ref = detail::trim(rec->fields[1]);
        e.metric = detail::to_lower(detail::trim(rec->fields[2]));
        if (e.metric != "severity" && e.metric != "probability" && e.metric != "risk") {
            throw ExpectationError(std::string(source) + ": line " + std::to_string(rec->line) +
                                   ": unknown metric \"" + rec->fields[2] + "\"");
        }
        try {
            e.expected = std::stod(detail::trim(rec->fields[3]));
        } catch (const std::exception&) {
            throw ExpectationError(std::string(source) + ": line " + std::to_string(rec->line) +
                                   ": bad expected value \"" + rec->fields[3] + "\"");
        }
        e.expected_cents = to_display_cents(e.expected);
        const std::string flag = detail::to_lower(detail::trim(rec->fields[4]));
        if (flag == "true" || flag == "1" || flag == "yes") {
            e.erratum = true;
        } else if (flag == "false" || flag == "0" || flag == "no") {
            e.erratum = false;
        } else {
            throw ExpectationError(std::string(source) + ": line " + std::to_string(rec->line) +
                                   ": bad erratum flag \"" + rec->fields[4] + "\"");
        }
        set.rows.push_back(std::move(e));
    }
    if (!header_seen) {
        throw ExpectationError(std::string(source) + ": missing header");
    }
    return set;
}

ExpectationSet load_expectations(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ExpectationError("FileUnreadable " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_expectations_text(buf.str(), path.string());
}

const ExpectationSet& builtin_expectations() {
    static const ExpectationSet set =
        load_expectations_text(detail::kCstrExpectedCsv, "builtin expectations");
    return set;
}

namespace {

double scenario_value(const safety::ScoreResult& score, const std::string& metric) {
    if (metric == "severity") return score.severity;
    if (metric == "probability") return score.probability;
    return score.risk;
}

struct Table6Group {
    std::vector<int> scenario_ids;
};

Table6Group resolve_group(const AssessmentReport& report, const std::string& ref) {
    Table6Group group;
    if (ref.rfind("level:", 0) == 0) {
        int level = -1;
        try {
            level = std::stoi(ref.substr(6));
        } catch (const std::exception&) {
            throw UnknownReferenceError("UnknownReference summary " + ref);
        }
        for (const auto& entry : report.entries) {
            if (entry.scenario.level == level) group.scenario_ids.push_back(entry.scenario.id);
        }
    } else if (ref.rfind("location:", 0) == 0) {
        const std::string wanted = detail::to_lower(detail::trim(ref.substr(9)));
        for (const auto& entry : report.entries) {
            if (detail::to_lower(entry.scenario.location) == wanted) {
                group.scenario_ids.push_back(entry.scenario.id);
            }
        }
    } else {
        throw UnknownReferenceError("UnknownReference summary " + ref);
    }
    if (group.scenario_ids.empty()) {
        throw UnknownReferenceError("UnknownReference summary " + ref +
                                    ": no such group in the report");
    }
    return group;
}

} // namespace

std::vector<AuditFinding> audit(const AssessmentReport& report, const ExpectationSet& expected) {
    std::map<int, const safety::ScoreResult*> by_id;
    for (const auto& entry : report.entries) {
        by_id[entry.scenario.id] = &entry.score;
    }
    // Published per-scenario cells, for checking the published aggregates.
    std::map<std::pair<int, std::string>, std::int64_t> published_cents;
    for (const auto& e : expected.rows) {
        if (e.table == "scenario") {
            try {
                published_cents[{std::stoi(e.ref), e.metric}] = e.expected_cents;
            } catch (const std::exception&) {
                throw UnknownReferenceError("UnknownReference scenario " + e.ref);
            }
        }
    }

    std::vector<AuditFinding> findings;
    findings.reserve(expected.rows.size());
    for (const auto& e : expected.rows) {
        AuditFinding f;
        f.table = e.table;
        f.ref = e.ref;
        f.metric = e.metric;
        f.expected = e.expected;
        f.erratum = e.erratum;

        if (e.table == "scenario") {
            int id = 0;
            try {
                id = std::stoi(e.ref);
            } catch (const std::exception&) {
                throw UnknownReferenceError("UnknownReference scenario " + e.ref);
            }
            const auto it = by_id.find(id);
            if (it == by_id.end()) {
                throw UnknownReferenceError("UnknownReference scenario " + e.ref +
                                            ": no such scenario in the report");
            }
            f.computed = scenario_value(*it->second, e.metric);
        } else {
            if (e.metric == "probability") {
                throw UnknownReferenceError("UnknownReference summary " + e.ref +
                                            ": aggregate cells carry severity/risk only");
            }
            const auto group = resolve_group(report, e.ref);
            std::int64_t sum = 0;
            for (int id : group.scenario_ids) {
                const auto it = published_cents.find({id, e.metric});
                if (it == published_cents.end()) {
                    throw UnknownReferenceError("UnknownReference summary " + e.ref +
                                                ": missing scenario " + e.metric +
                                                " for scenario " + std::to_string(id));
                }
                sum += it->second;
            }
            f.computed = static_cast<double>(sum) /
                         (100.0 * static_cast<double>(group.scenario_ids.size()));
        }

        f.delta = f.computed - f.expected;
        f.verdict = std::abs(f.delta) <= kTolerance ? Verdict::Match : Verdict::Mismatch;
        findings.push_back(std::move(f));
    }
    return findings;
}

bool audit_clean(const std::vector<AuditFinding>& findings) {
    for (const auto& f : findings) {
        const bool matched = f.verdict == Verdict::Match;
        if (matched == f.erratum) return false;
    }
    return true;
}

} // namespace icsrisk::analysis
