#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace latgate {

/// Physical dimension of a configuration value; selects which unit suffixes are accepted.
enum class Dimension {
    dimensionless,
    length,            // m, mm, um, nm
    mass,              // kg, amu
    angular_frequency, // rad/s, 1/s, Hz, kHz, MHz, GHz, THz (cyclic units are multiplied by 2 pi)
    intensity,         // W/m2, W/cm2, mW/cm2, uW/cm2
    angle,             // rad, deg
    energy_frequency,  // J, Hz, kHz, MHz (energies quoted as E/h)
    time,              // s, ms, us, ns
};

/// Flat `key = value` file. `#` starts a comment; blank lines are ignored.
class KeyValueFile {
public:
    static KeyValueFile parse(std::istream& in, std::string source_name = "<stream>");
    static KeyValueFile load(const std::filesystem::path& path);

    bool contains(std::string_view key) const;
    const std::string& raw(std::string_view key) const;
    std::optional<std::string> find_raw(std::string_view key) const;

    /// Value converted to SI. A bare number is taken to already be SI.
    double quantity(std::string_view key, Dimension dim) const;
    double quantity_or(std::string_view key, Dimension dim, double fallback) const;

    const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }
    const std::string& source() const { return source_; }

private:
    std::map<std::string, std::string, std::less<>> entries_;
    std::string source_;
};

/// Parse "<number> [unit]" into SI units for the given dimension.
double parse_quantity(std::string_view text, Dimension dim);

}  // namespace latgate
