#include "icsrisk/cvss.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

namespace icsrisk::cvss {

namespace {

constexpr std::array<std::pair<std::string_view, AttackVector>, 4> kAvCodes{{
    {"N", AttackVector::Network},
    {"A", AttackVector::Adjacent},
    {"L", AttackVector::Local},
    {"P", AttackVector::Physical},
}};
constexpr std::array<std::pair<std::string_view, AttackComplexity>, 2> kAcCodes{{
    {"L", AttackComplexity::Low},
    {"H", AttackComplexity::High},
}};
constexpr std::array<std::pair<std::string_view, PrivilegesRequired>, 3> kPrCodes{{
    {"N", PrivilegesRequired::None},
    {"L", PrivilegesRequired::Low},
    {"H", PrivilegesRequired::High},
}};
constexpr std::array<std::pair<std::string_view, UserInteraction>, 2> kUiCodes{{
    {"N", UserInteraction::None},
    {"R", UserInteraction::Required},
}};
constexpr std::array<std::pair<std::string_view, Scope>, 2> kScopeCodes{{
    {"U", Scope::Unchanged},
    {"C", Scope::Changed},
}};
constexpr std::array<std::pair<std::string_view, ImpactLevel>, 3> kImpactCodes{{
    {"N", ImpactLevel::None},
    {"L", ImpactLevel::Low},
    {"H", ImpactLevel::High},
}};

template <typename Enum, std::size_t N>
Enum decode(const std::array<std::pair<std::string_view, Enum>, N>& codes,
            std::string_view value, std::string_view token) {
    for (const auto& [code, e] : codes) {
        if (value == code) return e;
    }
    throw ParseError(ParseErrorCode::UnknownValue, std::string(token));
}

} // namespace

std::string_view to_string(ParseErrorCode code) {
    switch (code) {
    case ParseErrorCode::MalformedPrefix: return "MalformedPrefix";
    case ParseErrorCode::UnknownMetric: return "UnknownMetric";
    case ParseErrorCode::UnknownValue: return "UnknownValue";
    case ParseErrorCode::DuplicateMetric: return "DuplicateMetric";
    case ParseErrorCode::MissingMetric: return "MissingMetric";
    }
    return "ParseError";
}

ParseError::ParseError(ParseErrorCode code, std::string token)
    : Error(std::string(to_string(code)) + " " + token), code_(code), token_(std::move(token)) {}

MetricVector parse_vector(std::string_view text) {
    constexpr std::string_view prefix = "CVSS:3.1";
    const auto first_slash = text.find('/');
    if (text.substr(0, first_slash) != prefix) {
        throw ParseError(ParseErrorCode::MalformedPrefix,
                         std::string(text.substr(0, std::min(first_slash, text.size()))));
    }
    if (first_slash == std::string_view::npos) {
        throw ParseError(ParseErrorCode::MissingMetric, "AV");
    }

    MetricVector v;
    // seen flags: AV AC PR UI S C I A
    std::array<bool, 8> seen{};
    constexpr std::array<std::string_view, 8> metric_names{"AV", "AC", "PR", "UI",
                                                           "S",  "C",  "I",  "A"};

    std::string_view rest = text.substr(first_slash + 1);
    while (!rest.empty()) {
        const auto slash = rest.find('/');
        const std::string_view token = rest.substr(0, slash);
        rest = (slash == std::string_view::npos) ? std::string_view{} : rest.substr(slash + 1);

        const auto colon = token.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError(ParseErrorCode::UnknownMetric, std::string(token));
        }
        const std::string_view key = token.substr(0, colon);
        const std::string_view value = token.substr(colon + 1);

        const auto it = std::find(metric_names.begin(), metric_names.end(), key);
        if (it == metric_names.end()) {
            throw ParseError(ParseErrorCode::UnknownMetric, std::string(token));
        }
        const auto idx = static_cast<std::size_t>(it - metric_names.begin());
        if (seen[idx]) {
            throw ParseError(ParseErrorCode::DuplicateMetric, std::string(key));
        }
        seen[idx] = true;

        switch (idx) {
        case 0: v.av = decode(kAvCodes, value, token); break;
        case 1: v.ac = decode(kAcCodes, value, token); break;
        case 2: v.pr = decode(kPrCodes, value, token); break;
        case 3: v.ui = decode(kUiCodes, value, token); break;
        case 4: v.scope = decode(kScopeCodes, value, token); break;
        case 5: v.c = decode(kImpactCodes, value, token); break;
        case 6: v.i = decode(kImpactCodes, value, token); break;
        case 7: v.a = decode(kImpactCodes, value, token); break;
        }
    }
    for (std::size_t idx = 0; idx < seen.size(); ++idx) {
        if (!seen[idx]) {
            throw ParseError(ParseErrorCode::MissingMetric, std::string(metric_names[idx]));
        }
    }
    return v;
}

std::string render_vector(const MetricVector& v) {
    std::string out = "CVSS:3.1";
    const auto add = [&out](std::string_view key, std::string_view code) {
        out += '/';
        out += key;
        out += ':';
        out += code;
    };
    add("AV", code_of(v.av));
    add("AC", code_of(v.ac));
    add("PR", code_of(v.pr));
    add("UI", code_of(v.ui));
    add("S", code_of(v.scope));
    add("C", code_of(v.c));
    add("I", code_of(v.i));
    add("A", code_of(v.a));
    return out;
}

double weight(AttackVector av) {
    switch (av) {
    case AttackVector::Network: return 0.85;
    case AttackVector::Adjacent: return 0.62;
    case AttackVector::Local: return 0.55;
    case AttackVector::Physical: return 0.2;
    }
    return 0.0;
}

double weight(AttackComplexity ac) {
    return ac == AttackComplexity::Low ? 0.77 : 0.44;
}

double weight(PrivilegesRequired pr, Scope scope) {
    switch (pr) {
    case PrivilegesRequired::None: return 0.85;
    case PrivilegesRequired::Low: return scope == Scope::Changed ? 0.68 : 0.62;
    case PrivilegesRequired::High: return scope == Scope::Changed ? 0.5 : 0.27;
    }
    return 0.0;
}

double weight(UserInteraction ui) {
    return ui == UserInteraction::None ? 0.85 : 0.62;
}

double weight(ImpactLevel level) {
    switch (level) {
    case ImpactLevel::None: return 0.0;
    case ImpactLevel::Low: return 0.22;
    case ImpactLevel::High: return 0.56;
    }
    return 0.0;
}

double roundup(double x) {
    // Integer arithmetic in units of 1e-5, as the scoring standard defines
    // it, so 8.6 * 0.7 style products land on the intended decimal.
    const auto n = std::llround(x * 100000.0);
    if (n % 10000 == 0) {
        return static_cast<double>(n) / 100000.0;
    }
    return static_cast<double>(n / 10000 + 1) / 10.0;
}

ScoreBreakdown base_score(const MetricVector& v) {
    ScoreBreakdown out;
    out.iss = 1.0 - (1.0 - weight(v.c)) * (1.0 - weight(v.i)) * (1.0 - weight(v.a));
    if (v.scope == Scope::Changed) {
        out.impact = 7.52 * (out.iss - 0.029) - 3.25 * std::pow(out.iss - 0.02, 15.0);
    } else {
        out.impact = 6.42 * out.iss;
    }
    out.exploitability =
        8.22 * weight(v.av) * weight(v.ac) * weight(v.pr, v.scope) * weight(v.ui);
    if (out.impact <= 0.0) {
        out.base_score = 0.0;
    } else if (v.scope == Scope::Changed) {
        out.base_score = roundup(std::min(1.08 * (out.impact + out.exploitability), 10.0));
    } else {
        out.base_score = roundup(std::min(out.impact + out.exploitability, 10.0));
    }
    return out;
}

std::string_view code_of(AttackVector av) {
    switch (av) {
    case AttackVector::Network: return "N";
    case AttackVector::Adjacent: return "A";
    case AttackVector::Local: return "L";
    case AttackVector::Physical: return "P";
    }
    return "?";
}

std::string_view code_of(AttackComplexity ac) {
    return ac == AttackComplexity::Low ? "L" : "H";
}

std::string_view code_of(PrivilegesRequired pr) {
    switch (pr) {
    case PrivilegesRequired::None: return "N";
    case PrivilegesRequired::Low: return "L";
    case PrivilegesRequired::High: return "H";
    }
    return "?";
}

std::string_view code_of(UserInteraction ui) {
    return ui == UserInteraction::None ? "N" : "R";
}

std::string_view code_of(Scope s) {
    return s == Scope::Unchanged ? "U" : "C";
}

std::string_view code_of(ImpactLevel l) {
    switch (l) {
    case ImpactLevel::None: return "N";
    case ImpactLevel::Low: return "L";
    case ImpactLevel::High: return "H";
    }
    return "?";
}

std::string_view name_of(AttackVector av) {
    switch (av) {
    case AttackVector::Network: return "Network";
    case AttackVector::Adjacent: return "Adjacent";
    case AttackVector::Local: return "Local";
    case AttackVector::Physical: return "Physical";
    }
    return "?";
}

std::string_view name_of(AttackComplexity ac) {
    return ac == AttackComplexity::Low ? "Low" : "High";
}

std::string_view name_of(PrivilegesRequired pr) {
    switch (pr) {
    case PrivilegesRequired::None: return "None";
    case PrivilegesRequired::Low: return "Low";
    case PrivilegesRequired::High: return "High";
    }
    return "?";
}

std::string_view name_of(UserInteraction ui) {
    return ui == UserInteraction::None ? "None" : "Required";
}

std::string_view name_of(Scope s) {
    return s == Scope::Unchanged ? "Unchanged" : "Changed";
}

std::string_view name_of(ImpactLevel l) {
    switch (l) {
    case ImpactLevel::None: return "None";
    case ImpactLevel::Low: return "Low";
    case ImpactLevel::High: return "High";
    }
    return "?";
}

} // namespace icsrisk::cvss
