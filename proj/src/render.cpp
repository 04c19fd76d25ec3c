#include "icsrisk/render.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "csv.hpp"
#include "icsrisk/rounding.hpp"

namespace icsrisk::render {

using nlohmann::json;

Format parse_format(std::string_view text) {
    const std::string lowered = detail::to_lower(detail::trim(text));
    if (lowered == "table") return Format::Table;
    if (lowered == "csv") return Format::Csv;
    if (lowered == "json") return Format::Json;
    if (lowered == "markdown" || lowered == "md") return Format::Markdown;
    throw FormatError("unknown format \"" + std::string(text) + "\" (table|csv|json|markdown)");
}

std::string_view to_string(Format f) {
    switch (f) {
    case Format::Table: return "table";
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Markdown: return "markdown";
    }
    return "?";
}

namespace {

std::string format4(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

std::string_view verdict_str(analysis::Verdict v) {
    return v == analysis::Verdict::Match ? "Match" : "Mismatch";
}

json settings_json(const analysis::Settings& s) {
    return json{
        {"model", s.model == analysis::ProbabilityModel::V31 ? "v31" : "v2"},
        {"paper_compat", s.paper_compat},
        {"si_table", s.si_table.source()},
    };
}

json score_json(const cvss::MetricVector& v, const cvss::ScoreBreakdown& b) {
    return json{
        {"vector", cvss::render_vector(v)},
        {"iss", b.iss},
        {"impact", b.impact},
        {"exploitability", b.exploitability},
        {"base_score", b.base_score},
    };
}

std::string markdown_row(const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& cell : cells) {
        out += ' ';
        out += cell;
        out += " |";
    }
    out += '\n';
    return out;
}

std::string markdown_separator(std::size_t n) {
    std::string out = "|";
    for (std::size_t i = 0; i < n; ++i) out += " --- |";
    out += '\n';
    return out;
}

} // namespace

std::string score(const cvss::MetricVector& v, const cvss::ScoreBreakdown& b,
                  const std::optional<LevelDetail>& detail_opt, Format format) {
    switch (format) {
    case Format::Json: {
        json doc = score_json(v, b);
        if (detail_opt) {
            doc["level"] = detail_opt->level;
            doc["si"] = detail_opt->si;
            doc["severity"] = detail_opt->severity;
            doc["probability"] = detail_opt->probability;
            doc["risk"] = detail_opt->risk;
            doc["severity_display"] = display2(detail_opt->severity);
            doc["probability_display"] = display2(detail_opt->probability);
            doc["risk_display"] = display2(detail_opt->risk);
        }
        return doc.dump(2) + "\n";
    }
    case Format::Csv: {
        std::ostringstream out;
        out << "vector,iss,impact,exploitability,base_score";
        if (detail_opt) out << ",level,si,severity,probability,risk";
        out << '\n';
        out << cvss::render_vector(v) << ',' << format4(b.iss) << ',' << format4(b.impact) << ','
            << format4(b.exploitability) << ',' << format1(b.base_score);
        if (detail_opt) {
            out << ',' << detail_opt->level << ',' << detail_opt->si << ','
                << format2(detail_opt->severity) << ',' << format2(detail_opt->probability) << ','
                << format2(detail_opt->risk);
        }
        out << '\n';
        return out.str();
    }
    case Format::Markdown: {
        std::ostringstream out;
        std::vector<std::string> head{"Vector", "ISS", "Impact", "Exploitability", "Base score"};
        std::vector<std::string> row{cvss::render_vector(v), format4(b.iss), format4(b.impact),
                                     format4(b.exploitability), format1(b.base_score)};
        if (detail_opt) {
            head.insert(head.end(), {"Level", "SI", "Severity", "Probability", "Risk"});
            row.insert(row.end(),
                       {std::to_string(detail_opt->level), format4(detail_opt->si),
                        format2(detail_opt->severity), format2(detail_opt->probability),
                        format2(detail_opt->risk)});
        }
        out << markdown_row(head) << markdown_separator(head.size()) << markdown_row(row);
        return out.str();
    }
    case Format::Table:
    default: {
        std::ostringstream out;
        out << "vector          " << cvss::render_vector(v) << '\n'
            << "iss             " << format4(b.iss) << '\n'
            << "impact          " << format4(b.impact) << '\n'
            << "exploitability  " << format4(b.exploitability) << '\n'
            << "base score      " << format1(b.base_score) << '\n';
        if (detail_opt) {
            out << "level           " << detail_opt->level << '\n'
                << "si              " << detail_opt->si << '\n'
                << "severity        " << format2(detail_opt->severity) << '\n'
                << "probability     " << format2(detail_opt->probability) << '\n'
                << "risk            " << format2(detail_opt->risk) << '\n';
        }
        return out.str();
    }
    }
}

std::string report(const analysis::AssessmentReport& report, Format format) {
    switch (format) {
    case Format::Json: {
        json doc;
        doc["catalog"] = report.catalog_name;
        doc["settings"] = settings_json(report.settings);
        json rows = json::array();
        for (const auto& entry : report.entries) {
            const auto& s = entry.scenario;
            const auto& r = entry.score;
            rows.push_back(json{
                {"id", s.id},
                {"level", s.level},
                {"location", s.location},
                {"title", s.title},
                {"failure", s.failure},
                {"consequence", s.consequence},
                {"vector", cvss::render_vector(s.vector)},
                {"iss", r.breakdown.iss},
                {"impact", r.breakdown.impact},
                {"exploitability", r.breakdown.exploitability},
                {"base_score", r.breakdown.base_score},
                {"si", r.si},
                {"severity", r.severity},
                {"probability", r.probability},
                {"risk", r.risk},
                {"severity_display", display2(r.severity)},
                {"probability_display", display2(r.probability)},
                {"risk_display", display2(r.risk)},
            });
        }
        doc["scenarios"] = std::move(rows);
        return doc.dump(2) + "\n";
    }
    case Format::Csv: {
        std::ostringstream out;
        out << "id,level,location,vector,base_score,si,severity,probability,risk\n";
        for (const auto& entry : report.entries) {
            const auto& s = entry.scenario;
            const auto& r = entry.score;
            out << s.id << ',' << s.level << ',' << detail::csv_escape(s.location) << ','
                << cvss::render_vector(s.vector) << ',' << format1(r.breakdown.base_score) << ','
                << r.si << ',' << format2(r.severity) << ',' << format2(r.probability) << ','
                << format2(r.risk) << '\n';
        }
        return out.str();
    }
    case Format::Markdown: {
        // Reference per-scenario table layout.
        std::ostringstream out;
        const std::vector<std::string> head{"No.",          "AV",
                                            "AC",           "PR",
                                            "UI",           "Confidentiality",
                                            "Integrity",    "Availability",
                                            "Scope",        "Probability",
                                            "Severity",     "Risk"};
        out << markdown_row(head) << markdown_separator(head.size());
        for (const auto& entry : report.entries) {
            const auto& v = entry.scenario.vector;
            const auto& r = entry.score;
            out << markdown_row({std::to_string(entry.scenario.id), std::string(name_of(v.av)),
                                 std::string(name_of(v.ac)), std::string(name_of(v.pr)),
                                 std::string(name_of(v.ui)), std::string(name_of(v.c)),
                                 std::string(name_of(v.i)), std::string(name_of(v.a)),
                                 std::string(name_of(v.scope)), format2(r.probability),
                                 format2(r.severity), format2(r.risk)});
        }
        return out.str();
    }
    case Format::Table:
    default: {
        std::ostringstream out;
        out << std::left << std::setw(4) << "id" << std::setw(6) << "level" << std::setw(26)
            << "location" << std::setw(46) << "vector" << std::right << std::setw(5) << "base"
            << std::setw(6) << "si" << std::setw(6) << "sev" << std::setw(6) << "prob"
            << std::setw(6) << "risk" << '\n';
        for (const auto& entry : report.entries) {
            const auto& s = entry.scenario;
            const auto& r = entry.score;
            std::ostringstream si;
            si << r.si;
            out << std::left << std::setw(4) << s.id << std::setw(6) << s.level << std::setw(26)
                << s.location.substr(0, 25) << std::setw(46) << cvss::render_vector(s.vector)
                << std::right << std::setw(5) << format1(r.breakdown.base_score) << std::setw(6)
                << si.str() << std::setw(6) << format2(r.severity) << std::setw(6)
                << format2(r.probability) << std::setw(6) << format2(r.risk) << '\n';
        }
        return out.str();
    }
    }
}

namespace {

std::string ranking_line(const RankedBy& ranked) {
    std::string out;
    for (std::size_t i = 0; i < ranked.ranking.keys.size(); ++i) {
        if (i > 0) out += '>';
        out += ranked.ranking.keys[i];
    }
    return out;
}

std::string ties_line(const analysis::Ranking& ranking) {
    std::string out;
    for (const auto& group : ranking.ties) {
        if (!out.empty()) out += "; ";
        out += '{';
        for (std::size_t i = 0; i < group.size(); ++i) {
            if (i > 0) out += ", ";
            out += group[i];
        }
        out += '}';
    }
    return out;
}

} // namespace

std::string aggregates(const std::vector<analysis::AggregateRow>& rows, analysis::GroupBy by,
                       const std::optional<RankedBy>& ranked, Format format) {
    const std::string key_head =
        by == analysis::GroupBy::Level ? "Level" : "Vulnerable location";
    switch (format) {
    case Format::Json: {
        json doc;
        json out_rows = json::array();
        for (const auto& row : rows) {
            out_rows.push_back(json{
                {"key", row.key},
                {"n", row.n},
                {"mean_severity", row.mean_severity()},
                {"mean_risk", row.mean_risk()},
                {"mean_severity_display", static_cast<double>(row.mean_severity_cents()) / 100.0},
                {"mean_risk_display", static_cast<double>(row.mean_risk_cents()) / 100.0},
            });
        }
        doc["by"] = by == analysis::GroupBy::Level ? "level" : "location";
        doc["rows"] = std::move(out_rows);
        if (ranked) {
            doc["rank_metric"] =
                ranked->metric == analysis::RankMetric::Severity ? "severity" : "risk";
            doc["ranking"] = ranked->ranking.keys;
            doc["ties"] = ranked->ranking.ties;
        }
        return doc.dump(2) + "\n";
    }
    case Format::Csv: {
        std::ostringstream out;
        out << "key,n,mean_severity,mean_risk\n";
        for (const auto& row : rows) {
            out << detail::csv_escape(row.key) << ',' << row.n << ','
                << format_cents(row.mean_severity_cents()) << ','
                << format_cents(row.mean_risk_cents()) << '\n';
        }
        if (ranked) {
            out << "# ranking("
                << (ranked->metric == analysis::RankMetric::Severity ? "severity" : "risk")
                << "): " << ranking_line(*ranked) << '\n';
            if (!ranked->ranking.ties.empty()) out << "# ties: " << ties_line(ranked->ranking) << '\n';
        }
        return out.str();
    }
    case Format::Markdown: {
        std::ostringstream out;
        out << markdown_row({key_head, "Severity", "Risk"}) << markdown_separator(3);
        for (const auto& row : rows) {
            out << markdown_row({row.key, format_cents(row.mean_severity_cents()),
                                 format_cents(row.mean_risk_cents())});
        }
        if (ranked) {
            out << '\n'
                << "Ranking by "
                << (ranked->metric == analysis::RankMetric::Severity ? "severity" : "risk") << ": "
                << ranking_line(*ranked) << '\n';
            if (!ranked->ranking.ties.empty()) out << "Ties: " << ties_line(ranked->ranking) << '\n';
        }
        return out.str();
    }
    case Format::Table:
    default: {
        std::ostringstream out;
        out << std::left << std::setw(26) << key_head << std::right << std::setw(4) << "n"
            << std::setw(10) << "severity" << std::setw(10) << "risk" << '\n';
        for (const auto& row : rows) {
            out << std::left << std::setw(26) << row.key << std::right << std::setw(4) << row.n
                << std::setw(10) << format_cents(row.mean_severity_cents()) << std::setw(10)
                << format_cents(row.mean_risk_cents()) << '\n';
        }
        if (ranked) {
            out << "ranking by "
                << (ranked->metric == analysis::RankMetric::Severity ? "severity" : "risk")
                << ": " << ranking_line(*ranked) << '\n';
            if (!ranked->ranking.ties.empty()) out << "ties: " << ties_line(ranked->ranking) << '\n';
        }
        return out.str();
    }
    }
}

std::string findings(const std::vector<analysis::AuditFinding>& findings, Format format) {
    // Per-table, per-metric tallies for the summary lines.
    struct Tally {
        int match = 0;
        int total = 0;
        int errata = 0;
    };
    std::vector<std::pair<std::string, Tally>> tallies;
    const auto tally_of = [&tallies](const std::string& key) -> Tally& {
        for (auto& [k, t] : tallies) {
            if (k == key) return t;
        }
        tallies.emplace_back(key, Tally{});
        return tallies.back().second;
    };
    for (const auto& f : findings) {
        auto& t = tally_of(f.table + " " + f.metric);
        t.total += 1;
        if (f.verdict == analysis::Verdict::Match) t.match += 1;
        if (f.erratum) t.errata += 1;
    }
    const auto summary_line = [](const std::string& key, const Tally& t) {
        std::ostringstream out;
        out << key << ": " << t.match << "/" << t.total << " match";
        if (t.errata > 0) out << ", " << t.errata << " known " << (t.errata == 1 ? "erratum" : "errata");
        return out.str();
    };

    switch (format) {
    case Format::Json: {
        json doc;
        json rows = json::array();
        for (const auto& f : findings) {
            rows.push_back(json{
                {"table", f.table},
                {"ref", f.ref},
                {"metric", f.metric},
                {"expected", f.expected},
                {"computed", f.computed},
                {"delta", f.delta},
                {"verdict", std::string(verdict_str(f.verdict))},
                {"erratum", f.erratum},
            });
        }
        doc["findings"] = std::move(rows);
        doc["clean"] = analysis::audit_clean(findings);
        json summary = json::array();
        for (const auto& [key, t] : tallies) summary.push_back(summary_line(key, t));
        doc["summary"] = std::move(summary);
        return doc.dump(2) + "\n";
    }
    case Format::Csv: {
        std::ostringstream out;
        out << "table,ref,metric,expected,computed,delta,verdict,erratum\n";
        for (const auto& f : findings) {
            out << f.table << ',' << detail::csv_escape(f.ref) << ',' << f.metric << ','
                << format2(f.expected) << ',' << format4(f.computed) << ',' << format4(f.delta)
                << ',' << verdict_str(f.verdict) << ',' << (f.erratum ? "true" : "false") << '\n';
        }
        return out.str();
    }
    case Format::Markdown: {
        std::ostringstream out;
        out << markdown_row({"Table", "Ref", "Metric", "Expected", "Computed", "Delta", "Verdict"})
            << markdown_separator(7);
        for (const auto& f : findings) {
            std::string verdict(verdict_str(f.verdict));
            if (f.erratum) verdict += " (known erratum)";
            out << markdown_row({f.table, f.ref, f.metric, format2(f.expected),
                                 format4(f.computed), format4(f.delta), verdict});
        }
        out << '\n';
        for (const auto& [key, t] : tallies) out << summary_line(key, t) << "  \n";
        return out.str();
    }
    case Format::Table:
    default: {
        std::ostringstream out;
        out << std::left << std::setw(8) << "table" << std::setw(34) << "ref" << std::setw(13)
            << "metric" << std::right << std::setw(9) << "expected" << std::setw(10) << "computed"
            << std::setw(9) << "delta" << "  verdict" << '\n';
        for (const auto& f : findings) {
            std::string verdict(verdict_str(f.verdict));
            if (f.erratum) verdict += " (known erratum)";
            out << std::left << std::setw(8) << f.table << std::setw(34) << f.ref << std::setw(13)
                << f.metric << std::right << std::setw(9) << format2(f.expected) << std::setw(10)
                << format4(f.computed) << std::setw(9) << format4(f.delta) << "  " << verdict
                << '\n';
        }
        for (const auto& [key, t] : tallies) out << summary_line(key, t) << '\n';
        return out.str();
    }
    }
}

} // namespace icsrisk::render
