#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "icsrisk/analysis.hpp"
#include "icsrisk/catalog.hpp"
#include "icsrisk/render.hpp"
#include "icsrisk/rounding.hpp"

namespace {

// Exit codes are a stable contract for scripting:
//   0 success, 1 audit found unexpected mismatches, 2 usage/input error.
constexpr int kExitOk = 0;
constexpr int kExitAuditFailed = 1;
constexpr int kExitUsage = 2;

struct CatalogOptions {
    std::string path;
    bool builtin_cstr = false;
    bool lenient = false;
};

struct AssessOptions {
    std::string model = "v31";
    bool paper_compat = false;
    std::string si_table_path;
};

void add_catalog_options(CLI::App& cmd, CatalogOptions& opts) {
    auto* path = cmd.add_option("catalog", opts.path, "Catalog CSV file");
    auto* builtin = cmd.add_flag("--builtin-cstr", opts.builtin_cstr,
                                 "Use the bundled CSTR case-study catalog");
    path->excludes(builtin);
    cmd.add_flag("--lenient", opts.lenient,
                 "Keep rows whose location is not in the taxonomy (warn instead of fail)");
}

void add_assess_options(CLI::App& cmd, AssessOptions& opts) {
    cmd.add_option("--model", opts.model, "Probability model: v31 (default) or v2")
        ->check(CLI::IsMember({"v31", "v2"}));
    cmd.add_flag("--paper-compat", opts.paper_compat,
                 "Reproduce the bundled reference probabilities for Physical-vector rows "
                 "(substitutes the Adjacent weight)");
    cmd.add_option("--si-table", opts.si_table_path,
                   "Safety-impact table CSV (level,si for levels 0-4); "
                   "ICSRISK_SI_TABLE is honored when the flag is absent");
}

icsrisk::safety::SiTable resolve_si_table(const std::string& flag_path) {
    if (!flag_path.empty()) {
        return icsrisk::safety::SiTable::from_csv_file(flag_path);
    }
    if (const char* env = std::getenv("ICSRISK_SI_TABLE"); env != nullptr && *env != '\0') {
        return icsrisk::safety::SiTable::from_csv_file(env);
    }
    return icsrisk::safety::SiTable::defaults();
}

icsrisk::catalog::Catalog resolve_catalog(const CatalogOptions& opts) {
    if (opts.builtin_cstr) {
        return icsrisk::catalog::builtin_cstr_catalog();
    }
    if (opts.path.empty()) {
        throw icsrisk::Error("no catalog given (pass a CSV path or --builtin-cstr)");
    }
    const auto mode = opts.lenient ? icsrisk::catalog::LoadMode::Lenient
                                   : icsrisk::catalog::LoadMode::Strict;
    auto loaded = icsrisk::catalog::load_catalog(opts.path, mode);
    for (const auto& warning : loaded.warnings) {
        std::cerr << "warning: " << warning << '\n';
    }
    return std::move(loaded.catalog);
}

icsrisk::analysis::Settings make_settings(const AssessOptions& opts) {
    icsrisk::analysis::Settings settings;
    settings.model = opts.model == "v2" ? icsrisk::analysis::ProbabilityModel::V2
                                        : icsrisk::analysis::ProbabilityModel::V31;
    settings.paper_compat = opts.paper_compat;
    settings.si_table = resolve_si_table(opts.si_table_path);
    return settings;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Safety-weighted CVSS v3.1 vulnerability scoring for industrial control systems"};
    app.require_subcommand(1);

    // score
    auto* score_cmd = app.add_subcommand("score", "Score a single CVSS v3.1 vector");
    std::string vector_text;
    int score_level = -1;
    std::string score_si_path;
    std::string score_format = "table";
    score_cmd->add_option("vector", vector_text, "CVSS v3.1 vector string")->required();
    score_cmd->add_option("--level", score_level, "PERA level 0-4; adds severity/probability/risk")
        ->check(CLI::Range(0, 4));
    score_cmd->add_option("--si-table", score_si_path, "Safety-impact table CSV");
    score_cmd->add_option("--format", score_format, "table|csv|json|markdown");

    // assess
    auto* assess_cmd = app.add_subcommand("assess", "Score every scenario of a catalog");
    CatalogOptions assess_catalog;
    AssessOptions assess_opts;
    std::string assess_format = "table";
    add_catalog_options(*assess_cmd, assess_catalog);
    add_assess_options(*assess_cmd, assess_opts);
    assess_cmd->add_option("--format", assess_format, "table|csv|json|markdown");

    // aggregate
    auto* agg_cmd = app.add_subcommand("aggregate", "Mean severity/risk per level or location");
    CatalogOptions agg_catalog;
    AssessOptions agg_opts;
    std::string agg_by;
    std::string agg_rank;
    std::string agg_format = "table";
    add_catalog_options(*agg_cmd, agg_catalog);
    add_assess_options(*agg_cmd, agg_opts);
    agg_cmd->add_option("--by", agg_by, "Group by level or location")
        ->required()
        ->check(CLI::IsMember({"level", "location"}));
    agg_cmd->add_option("--rank", agg_rank, "Append a ranking by severity or risk")
        ->check(CLI::IsMember({"severity", "risk"}));
    agg_cmd->add_option("--format", agg_format, "table|csv|json|markdown");

    // audit
    auto* audit_cmd = app.add_subcommand(
        "audit", "Diff computed values against an expected-values dataset");
    CatalogOptions audit_catalog;
    AssessOptions audit_opts;
    std::string audit_expected_path;
    bool audit_builtin_expected = false;
    std::string audit_format = "table";
    add_catalog_options(*audit_cmd, audit_catalog);
    add_assess_options(*audit_cmd, audit_opts);
    auto* expected_opt =
        audit_cmd->add_option("--expected", audit_expected_path, "Expected-values CSV");
    auto* builtin_expected_opt =
        audit_cmd->add_flag("--builtin-expected", audit_builtin_expected,
                            "Use the bundled expected values for the CSTR catalog");
    expected_opt->excludes(builtin_expected_opt);
    audit_cmd->add_option("--format", audit_format, "table|csv|json|markdown");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help and friends
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (score_cmd->parsed()) {
            const auto vec = icsrisk::cvss::parse_vector(vector_text);
            const auto breakdown = icsrisk::cvss::base_score(vec);
            std::optional<icsrisk::render::LevelDetail> detail;
            if (score_cmd->count("--level") > 0) {
                const auto table = resolve_si_table(score_si_path);
                icsrisk::render::LevelDetail d;
                d.level = score_level;
                d.si = icsrisk::safety::safety_impact(score_level, table);
                d.severity = d.si * breakdown.base_score;
                d.probability = icsrisk::safety::probability_v31(vec);
                d.risk = icsrisk::safety::risk(d.probability, d.severity);
                detail = d;
            }
            std::cout << icsrisk::render::score(vec, breakdown, detail,
                                                icsrisk::render::parse_format(score_format));
            return kExitOk;
        }

        if (assess_cmd->parsed()) {
            const auto cat = resolve_catalog(assess_catalog);
            const auto report = icsrisk::analysis::assess(cat, make_settings(assess_opts));
            std::cout << icsrisk::render::report(report,
                                                 icsrisk::render::parse_format(assess_format));
            return kExitOk;
        }

        if (agg_cmd->parsed()) {
            const auto cat = resolve_catalog(agg_catalog);
            const auto report = icsrisk::analysis::assess(cat, make_settings(agg_opts));
            const auto by = agg_by == "level" ? icsrisk::analysis::GroupBy::Level
                                              : icsrisk::analysis::GroupBy::Location;
            const auto rows = icsrisk::analysis::aggregate(report, by);
            std::optional<icsrisk::render::RankedBy> ranked;
            if (!agg_rank.empty()) {
                const auto metric = agg_rank == "severity"
                                        ? icsrisk::analysis::RankMetric::Severity
                                        : icsrisk::analysis::RankMetric::Risk;
                ranked = icsrisk::render::RankedBy{metric, icsrisk::analysis::rank(rows, metric)};
            }
            std::cout << icsrisk::render::aggregates(rows, by, ranked,
                                                     icsrisk::render::parse_format(agg_format));
            return kExitOk;
        }

        if (audit_cmd->parsed()) {
            const auto cat = resolve_catalog(audit_catalog);
            const auto report = icsrisk::analysis::assess(cat, make_settings(audit_opts));
            icsrisk::analysis::ExpectationSet expected;
            if (audit_builtin_expected) {
                expected = icsrisk::analysis::builtin_expectations();
            } else if (!audit_expected_path.empty()) {
                expected = icsrisk::analysis::load_expectations(audit_expected_path);
            } else {
                throw icsrisk::Error("no expected values given (--expected PATH or --builtin-expected)");
            }
            const auto findings = icsrisk::analysis::audit(report, expected);
            std::cout << icsrisk::render::findings(findings,
                                                   icsrisk::render::parse_format(audit_format));
            return icsrisk::analysis::audit_clean(findings) ? kExitOk : kExitAuditFailed;
        }
    } catch (const icsrisk::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
