#include "icsrisk/taxonomy.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "builtin_data.hpp"
#include "csv.hpp"

namespace icsrisk::taxonomy {

namespace {

constexpr int kLevelCount = 5;

std::string read_file(const std::filesystem::path& path, std::string_view what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw TaxonomyError(std::string(what) + " file unreadable: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Collapse runs of whitespace; used when a parenthetical is cut out of a name.
std::string normalize_spaces(std::string_view s) {
    std::string out;
    bool pending_space = false;
    for (char c : s) {
        if (c == ' ' || c == '\t') {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return out;
}

/// Match keys for one name: the full string, each parenthesized
/// abbreviation, and the string with parentheticals removed. All lowercase.
/// "Remote Terminal Unit (RTU)" -> {"remote terminal unit (rtu)", "rtu",
/// "remote terminal unit"}.
std::vector<std::string> match_keys(std::string_view name) {
    std::vector<std::string> keys;
    keys.push_back(detail::to_lower(detail::trim(name)));
    std::string stripped;
    std::size_t pos = 0;
    bool any_paren = false;
    while (pos < name.size()) {
        const auto open = name.find('(', pos);
        if (open == std::string_view::npos) {
            stripped += name.substr(pos);
            break;
        }
        const auto close = name.find(')', open + 1);
        if (close == std::string_view::npos) {
            stripped += name.substr(pos);
            break;
        }
        any_paren = true;
        stripped += name.substr(pos, open - pos);
        keys.push_back(detail::to_lower(detail::trim(name.substr(open + 1, close - open - 1))));
        pos = close + 1;
    }
    if (any_paren) {
        keys.push_back(detail::to_lower(normalize_spaces(detail::trim(stripped))));
    }
    return keys;
}

std::vector<std::string> split_aliases(std::string_view field) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= field.size()) {
        const auto sep = field.find(';', start);
        const auto part = detail::trim(field.substr(
            start, sep == std::string_view::npos ? std::string_view::npos : sep - start));
        if (!part.empty()) out.push_back(part);
        if (sep == std::string_view::npos) break;
        start = sep + 1;
    }
    return out;
}

} // namespace

Taxonomy Taxonomy::from_csv(std::string_view text, std::string_view source) {
    Taxonomy tax;
    detail::CsvReader reader(text);
    bool header_seen = false;
    std::set<std::pair<int, std::string>> keys;
    while (auto rec = reader.next()) {
        if (!header_seen) {
            if (!rec->fields.empty() && !rec->fields[0].empty() && rec->fields[0][0] == '#') {
                continue;
            }
            if (rec->fields.size() < 3 || detail::to_lower(detail::trim(rec->fields[0])) != "level" ||
                detail::to_lower(detail::trim(rec->fields[1])) != "name" ||
                detail::to_lower(detail::trim(rec->fields[2])) != "similar") {
                throw TaxonomyError(std::string(source) + ": line " + std::to_string(rec->line) +
                                    ": expected header level,name,similar");
            }
            header_seen = true;
            continue;
        }
        if (rec->fields.size() != 3) {
            throw TaxonomyError(std::string(source) + ": line " + std::to_string(rec->line) +
                                ": expected 3 fields");
        }
        VulnerableLocation loc;
        try {
            loc.level = std::stoi(detail::trim(rec->fields[0]));
        } catch (const std::exception&) {
            throw TaxonomyError(std::string(source) + ": line " + std::to_string(rec->line) +
                                ": bad level \"" + rec->fields[0] + "\"");
        }
        if (loc.level < 0 || loc.level >= kLevelCount) {
            throw TaxonomyError(std::string(source) + ": line " + std::to_string(rec->line) +
                                ": level " + std::to_string(loc.level) + " outside 0..4");
        }
        loc.name = detail::trim(rec->fields[1]);
        if (loc.name.empty()) {
            throw TaxonomyError(std::string(source) + ": line " + std::to_string(rec->line) +
                                ": empty name");
        }
        loc.similar = split_aliases(rec->fields[2]);
        // Names unique per level, case-insensitively.
        if (!keys.emplace(loc.level, detail::to_lower(loc.name)).second) {
            throw TaxonomyError(std::string(source) + ": line " + std::to_string(rec->line) +
                                ": duplicate location \"" + loc.name + "\" at level " +
                                std::to_string(loc.level));
        }
        tax.locations_.push_back(std::move(loc));
    }
    if (!header_seen) {
        throw TaxonomyError(std::string(source) + ": missing header");
    }
    return tax;
}

Taxonomy Taxonomy::from_csv_file(const std::filesystem::path& path) {
    return from_csv(read_file(path, "taxonomy"), path.string());
}

std::vector<VulnerableLocation> Taxonomy::locations_for_level(int level) const {
    if (level < 0 || level >= kLevelCount) {
        throw UnknownLevelError(level);
    }
    std::vector<VulnerableLocation> out;
    for (const auto& loc : locations_) {
        if (loc.level == level) out.push_back(loc);
    }
    return out;
}

std::vector<VulnerableLocation> Taxonomy::resolve(std::string_view name) const {
    const std::string wanted = detail::to_lower(detail::trim(name));
    std::vector<VulnerableLocation> out;
    if (wanted.empty()) return out;
    for (const auto& loc : locations_) {
        bool hit = false;
        for (const auto& key : match_keys(loc.name)) {
            if (key == wanted) { hit = true; break; }
        }
        for (std::size_t i = 0; !hit && i < loc.similar.size(); ++i) {
            for (const auto& key : match_keys(loc.similar[i])) {
                if (key == wanted) { hit = true; break; }
            }
        }
        if (hit) out.push_back(loc);
    }
    return out;
}

const Taxonomy& builtin_taxonomy() {
    static const Taxonomy tax = Taxonomy::from_csv(detail::kTaxonomyCsv, "builtin taxonomy");
    return tax;
}

std::string_view to_string(LoopComponent c) {
    switch (c) {
    case LoopComponent::Sensor: return "Sensor";
    case LoopComponent::Actuator: return "Actuator";
    case LoopComponent::Controller: return "Controller";
    case LoopComponent::Network: return "Network";
    }
    return "?";
}

LoopComponent parse_component(std::string_view text) {
    const std::string lowered = detail::to_lower(detail::trim(text));
    if (lowered == "sensor") return LoopComponent::Sensor;
    if (lowered == "actuator") return LoopComponent::Actuator;
    if (lowered == "controller") return LoopComponent::Controller;
    if (lowered == "network") return LoopComponent::Network;
    throw UnknownComponentError(text);
}

AttackFrame AttackFrame::from_csv(std::string_view text, std::string_view source) {
    AttackFrame frame;
    detail::CsvReader reader(text);
    bool header_seen = false;
    while (auto rec = reader.next()) {
        if (!header_seen) {
            if (!rec->fields.empty() && !rec->fields[0].empty() && rec->fields[0][0] == '#') {
                continue;
            }
            if (rec->fields.size() < 3 ||
                detail::to_lower(detail::trim(rec->fields[0])) != "component" ||
                detail::to_lower(detail::trim(rec->fields[1])) != "vector" ||
                detail::to_lower(detail::trim(rec->fields[2])) != "template") {
                throw TaxonomyError(std::string(source) + ": line " + std::to_string(rec->line) +
                                    ": expected header component,vector,template");
            }
            header_seen = true;
            continue;
        }
        if (rec->fields.size() != 3) {
            throw TaxonomyError(std::string(source) + ": line " + std::to_string(rec->line) +
                                ": expected 3 fields");
        }
        AttackFrameEntry entry;
        entry.component = parse_component(rec->fields[0]);
        entry.vector = detail::trim(rec->fields[1]);
        entry.scenario_template = detail::trim(rec->fields[2]);
        frame.entries_.push_back(std::move(entry));
    }
    if (!header_seen) {
        throw TaxonomyError(std::string(source) + ": missing header");
    }
    return frame;
}

AttackFrame AttackFrame::from_csv_file(const std::filesystem::path& path) {
    return from_csv(read_file(path, "attack frame"), path.string());
}

std::vector<AttackFrameEntry> AttackFrame::for_component(LoopComponent c) const {
    std::vector<AttackFrameEntry> out;
    for (const auto& entry : entries_) {
        if (entry.component == c) out.push_back(entry);
    }
    return out;
}

const AttackFrame& builtin_attack_frame() {
    static const AttackFrame frame =
        AttackFrame::from_csv(detail::kAttackFrameCsv, "builtin attack frame");
    return frame;
}

} // namespace icsrisk::taxonomy
