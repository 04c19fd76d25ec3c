#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "icsrisk/errors.hpp"

namespace icsrisk::taxonomy {

class TaxonomyError : public Error {
public:
    using Error::Error;
};

class UnknownComponentError : public Error {
public:
    explicit UnknownComponentError(std::string_view token)
        : Error("UnknownComponent " + std::string(token)) {}
};

struct VulnerableLocation {
    std::string name;
    int level = 0;
    std::vector<std::string> similar; // aliases

    bool operator==(const VulnerableLocation&) const = default;
};

/// The vulnerable-location table: which components sit at which PERA level,
/// plus alias lists. Read-only after load.
class Taxonomy {
public:
    static Taxonomy from_csv(std::string_view text, std::string_view source);
    static Taxonomy from_csv_file(const std::filesystem::path& path);

    /// Entries of one level, in file order. Throws UnknownLevelError.
    std::vector<VulnerableLocation> locations_for_level(int level) const;

    /// Whole-string case-insensitive match of `name` against location names,
    /// aliases, and their parenthesized abbreviations ("RTU" matches
    /// "Remote Terminal Unit (RTU)"). Empty result = no match.
    std::vector<VulnerableLocation> resolve(std::string_view name) const;

    const std::vector<VulnerableLocation>& all() const { return locations_; }

private:
    std::vector<VulnerableLocation> locations_;
};

/// The shipped location table.
const Taxonomy& builtin_taxonomy();

enum class LoopComponent { Sensor, Actuator, Controller, Network };

std::string_view to_string(LoopComponent c);
LoopComponent parse_component(std::string_view text); // throws UnknownComponentError

struct AttackFrameEntry {
    LoopComponent component = LoopComponent::Sensor;
    std::string vector;            // attacked parameter, e.g. "Process variable (PV)"
    std::string scenario_template; // what the attacker does with it

    bool operator==(const AttackFrameEntry&) const = default;
};

/// Attack-scenario frame over the minimal control loop.
class AttackFrame {
public:
    static AttackFrame from_csv(std::string_view text, std::string_view source);
    static AttackFrame from_csv_file(const std::filesystem::path& path);

    std::vector<AttackFrameEntry> for_component(LoopComponent c) const;
    const std::vector<AttackFrameEntry>& all() const { return entries_; }

private:
    std::vector<AttackFrameEntry> entries_;
};

const AttackFrame& builtin_attack_frame();

} // namespace icsrisk::taxonomy
