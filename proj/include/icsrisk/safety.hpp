#pragma once

#include <array>
#include <filesystem>
#include <string_view>

#include "icsrisk/cvss.hpp"
#include "icsrisk/errors.hpp"

namespace icsrisk::safety {

inline constexpr int kLevelCount = 5; // PERA levels 0..4

class SiTableError : public Error {
public:
    using Error::Error;
};

/// Safety-impact weights per architecture level. Weights must lie in (0, 1]
/// and strictly decrease as the level rises; construction validates this.
class SiTable {
public:
    static const SiTable& defaults(); // level 0->1, 1->0.9, 2->0.8, 3->0.1, 4->0.05
    static SiTable from_values(const std::array<double, kLevelCount>& si);
    static SiTable from_csv_file(const std::filesystem::path& path);
    static SiTable from_csv(std::string_view text, std::string_view source);

    double at(int level) const; // throws UnknownLevelError
    const std::string& source() const { return source_; }

private:
    SiTable(std::array<double, kLevelCount> si, std::string source);

    std::array<double, kLevelCount> si_;
    std::string source_;
};

double safety_impact(int level, const SiTable& table = SiTable::defaults());

/// Exploit probability from the v3.1 exploitability metrics:
/// 2.11 * w(AV) * w(AC) * w(PR|scope) * w(UI), always in (0, 1).
/// paper_compat substitutes the Adjacent weight for Physical, matching how
/// the bundled reference dataset's published probabilities were produced.
double probability_v31(const cvss::MetricVector& v, bool paper_compat = false);

// CVSS v2-era exploitability metrics, kept distinct from the v3.1 enums on
// purpose: the third factor is Authentication, not Privileges Required, and
// no mapping between the two is assumed.
enum class AccessVectorV2 { Local, AdjacentNetwork, Network };
enum class AccessComplexityV2 { High, Medium, Low };
enum class AuthenticationV2 { Multiple, Single, None };

double weight(AccessVectorV2 av);
double weight(AccessComplexityV2 ac);
double weight(AuthenticationV2 au);

/// Exploit probability from v2 metrics: 2 * AV * AC * Au, always in (0, 1).
double probability_v2(AccessVectorV2 av, AccessComplexityV2 ac, AuthenticationV2 au);

/// Safety-weighted severity: SI(level) * base_score(v). Exact product; the
/// display layer rounds, this does not.
double severity(const cvss::MetricVector& v, int level,
                const SiTable& table = SiTable::defaults());

/// risk = probability * severity, with probability at full precision.
double risk(double probability, double severity);

/// Everything computed for one catalog scenario.
struct ScoreResult {
    int scenario_id = 0;
    cvss::ScoreBreakdown breakdown;
    double si = 0.0;
    double severity = 0.0;
    double probability = 0.0;
    double risk = 0.0;
};

} // namespace icsrisk::safety
