#pragma once

#include <string>
#include <string_view>

#include "icsrisk/errors.hpp"

namespace icsrisk::cvss {

enum class AttackVector { Network, Adjacent, Local, Physical };
enum class AttackComplexity { Low, High };
enum class PrivilegesRequired { None, Low, High };
enum class UserInteraction { None, Required };
enum class Scope { Unchanged, Changed };
enum class ImpactLevel { None, Low, High };

/// The eight CVSS v3.1 base metrics of one vulnerability. Every field always
/// holds a legal value; there is no "not defined" state.
struct MetricVector {
    AttackVector av = AttackVector::Network;
    AttackComplexity ac = AttackComplexity::Low;
    PrivilegesRequired pr = PrivilegesRequired::None;
    UserInteraction ui = UserInteraction::None;
    Scope scope = Scope::Unchanged;
    ImpactLevel c = ImpactLevel::None;
    ImpactLevel i = ImpactLevel::None;
    ImpactLevel a = ImpactLevel::None;

    bool operator==(const MetricVector&) const = default;
};

/// Internals of the base-score computation.
struct ScoreBreakdown {
    double iss = 0.0;            // impact sub-score, in [0, 1]
    double impact = 0.0;
    double exploitability = 0.0;
    double base_score = 0.0;     // one-decimal value in {0.0} u [0.1, 10.0]
};

enum class ParseErrorCode {
    MalformedPrefix,
    UnknownMetric,
    UnknownValue,
    DuplicateMetric,
    MissingMetric,
};

std::string_view to_string(ParseErrorCode code);

class ParseError : public Error {
public:
    ParseError(ParseErrorCode code, std::string token);
    ParseErrorCode code() const { return code_; }
    const std::string& token() const { return token_; }

private:
    ParseErrorCode code_;
    std::string token_;
};

/// Parses the standard vector-string notation
/// "CVSS:3.1/AV:x/AC:x/PR:x/UI:x/S:x/C:x/I:x/A:x". The eight base metrics
/// must each appear exactly once, in any order after the prefix.
MetricVector parse_vector(std::string_view text);

/// Canonical rendering (AV,AC,PR,UI,S,C,I,A order). parse_vector is its
/// exact inverse.
std::string render_vector(const MetricVector& v);

// Metric weights. PR depends on scope.
double weight(AttackVector av);
double weight(AttackComplexity ac);
double weight(PrivilegesRequired pr, Scope scope);
double weight(UserInteraction ui);
double weight(ImpactLevel level);

/// Smallest one-decimal value >= x, computed with the integer-arithmetic
/// semantics that make the base score immune to binary floating-point
/// artifacts. Requires 0 <= x <= 10.
double roundup(double x);

/// The CVSS v3.1 base-score function.
ScoreBreakdown base_score(const MetricVector& v);

// Single-letter codes used by the vector string.
std::string_view code_of(AttackVector av);
std::string_view code_of(AttackComplexity ac);
std::string_view code_of(PrivilegesRequired pr);
std::string_view code_of(UserInteraction ui);
std::string_view code_of(Scope s);
std::string_view code_of(ImpactLevel l);

// Human-readable names ("Network", "High", "Unchanged", ...).
std::string_view name_of(AttackVector av);
std::string_view name_of(AttackComplexity ac);
std::string_view name_of(PrivilegesRequired pr);
std::string_view name_of(UserInteraction ui);
std::string_view name_of(Scope s);
std::string_view name_of(ImpactLevel l);

} // namespace icsrisk::cvss
