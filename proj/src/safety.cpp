#include "icsrisk/safety.hpp"

#include <fstream>
#include <sstream>

#include "csv.hpp"

namespace icsrisk::safety {

namespace {

std::array<double, kLevelCount> validate_si(const std::array<double, kLevelCount>& si,
                                            std::string_view source) {
    for (int level = 0; level < kLevelCount; ++level) {
        const double w = si[static_cast<std::size_t>(level)];
        if (!(w > 0.0 && w <= 1.0)) {
            std::ostringstream msg;
            msg << "InvalidSiTable " << source << ": level " << level << " weight " << w
                << " outside (0,1]";
            throw SiTableError(msg.str());
        }
        if (level > 0 && !(w < si[static_cast<std::size_t>(level - 1)])) {
            std::ostringstream msg;
            msg << "InvalidSiTable " << source << ": weight must strictly decrease with level "
                << "(level " << level << ")";
            throw SiTableError(msg.str());
        }
    }
    return si;
}

} // namespace

SiTable::SiTable(std::array<double, kLevelCount> si, std::string source)
    : si_(si), source_(std::move(source)) {}

const SiTable& SiTable::defaults() {
    static const SiTable table({1.0, 0.9, 0.8, 0.1, 0.05}, "default");
    return table;
}

SiTable SiTable::from_values(const std::array<double, kLevelCount>& si) {
    return SiTable(validate_si(si, "values"), "values");
}

SiTable SiTable::from_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SiTableError("InvalidSiTable " + path.string() + ": file unreadable");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_csv(buf.str(), path.string());
}

SiTable SiTable::from_csv(std::string_view text, std::string_view source) {
    std::array<double, kLevelCount> si{};
    std::array<bool, kLevelCount> seen{};
    detail::CsvReader reader(text);
    bool first = true;
    while (auto rec = reader.next()) {
        if (!rec->fields.empty() && !rec->fields[0].empty() && rec->fields[0][0] == '#') {
            continue;
        }
        if (first && rec->fields.size() >= 2 && detail::to_lower(detail::trim(rec->fields[0])) == "level") {
            first = false;
            continue; // optional header
        }
        first = false;
        if (rec->fields.size() != 2) {
            throw SiTableError("InvalidSiTable " + std::string(source) + ": line " +
                               std::to_string(rec->line) + " needs level,si");
        }
        int level = -1;
        double value = 0.0;
        try {
            std::size_t idx = 0;
            level = std::stoi(detail::trim(rec->fields[0]), &idx);
            value = std::stod(detail::trim(rec->fields[1]));
        } catch (const std::exception&) {
            throw SiTableError("InvalidSiTable " + std::string(source) + ": line " +
                               std::to_string(rec->line) + " is not numeric");
        }
        if (level < 0 || level >= kLevelCount) {
            throw SiTableError("InvalidSiTable " + std::string(source) + ": line " +
                               std::to_string(rec->line) + " level " + std::to_string(level) +
                               " outside 0..4");
        }
        if (seen[static_cast<std::size_t>(level)]) {
            throw SiTableError("InvalidSiTable " + std::string(source) + ": duplicate level " +
                               std::to_string(level));
        }
        seen[static_cast<std::size_t>(level)] = true;
        si[static_cast<std::size_t>(level)] = value;
    }
    for (int level = 0; level < kLevelCount; ++level) {
        if (!seen[static_cast<std::size_t>(level)]) {
            throw SiTableError("InvalidSiTable " + std::string(source) + ": missing level " +
                               std::to_string(level));
        }
    }
    return SiTable(validate_si(si, source), std::string(source));
}

double SiTable::at(int level) const {
    if (level < 0 || level >= kLevelCount) {
        throw UnknownLevelError(level);
    }
    return si_[static_cast<std::size_t>(level)];
}

double safety_impact(int level, const SiTable& table) {
    return table.at(level);
}

double probability_v31(const cvss::MetricVector& v, bool paper_compat) {
    const cvss::AttackVector av = (paper_compat && v.av == cvss::AttackVector::Physical)
                                      ? cvss::AttackVector::Adjacent
                                      : v.av;
    return 2.11 * cvss::weight(av) * cvss::weight(v.ac) * cvss::weight(v.pr, v.scope) *
           cvss::weight(v.ui);
}

double weight(AccessVectorV2 av) {
    switch (av) {
    case AccessVectorV2::Local: return 0.395;
    case AccessVectorV2::AdjacentNetwork: return 0.646;
    case AccessVectorV2::Network: return 1.0;
    }
    return 0.0;
}

double weight(AccessComplexityV2 ac) {
    switch (ac) {
    case AccessComplexityV2::High: return 0.35;
    case AccessComplexityV2::Medium: return 0.61;
    case AccessComplexityV2::Low: return 0.71;
    }
    return 0.0;
}

double weight(AuthenticationV2 au) {
    switch (au) {
    case AuthenticationV2::Multiple: return 0.45;
    case AuthenticationV2::Single: return 0.56;
    case AuthenticationV2::None: return 0.704;
    }
    return 0.0;
}

double probability_v2(AccessVectorV2 av, AccessComplexityV2 ac, AuthenticationV2 au) {
    return 2.0 * weight(av) * weight(ac) * weight(au);
}

double severity(const cvss::MetricVector& v, int level, const SiTable& table) {
    return table.at(level) * cvss::base_score(v).base_score;
}

double risk(double probability, double severity) {
    return probability * severity;
}

} // namespace icsrisk::safety
