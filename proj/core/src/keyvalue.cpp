#include "latgate/keyvalue.hpp"

#include "latgate/constants.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <utility>

namespace latgate {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct UnitFactor {
    std::string_view name;
    double factor;
};

constexpr double kTwoPi = constants::two_pi;

constexpr UnitFactor kLength[] = {{"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
constexpr UnitFactor kMass[] = {{"kg", 1.0}, {"amu", 1.66053906660e-27}};
constexpr UnitFactor kAngularFrequency[] = {
    {"rad/s", 1.0},           {"1/s", 1.0},           {"Hz", kTwoPi},        {"kHz", kTwoPi * 1e3},
    {"MHz", kTwoPi * 1e6},    {"GHz", kTwoPi * 1e9},  {"THz", kTwoPi * 1e12}};
constexpr UnitFactor kIntensity[] = {
    {"W/m2", 1.0}, {"W/cm2", 1e4}, {"mW/cm2", 10.0}, {"uW/cm2", 1e-2}};
constexpr UnitFactor kAngle[] = {{"rad", 1.0}, {"deg", constants::pi / 180.0}};
constexpr UnitFactor kEnergy[] = {
    {"J", 1.0}, {"Hz", constants::h}, {"kHz", constants::h * 1e3}, {"MHz", constants::h * 1e6}};

constexpr UnitFactor kTime[] = {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}};

template <std::size_t N>
double lookup(const UnitFactor (&table)[N], std::string_view unit, std::string_view text) {
    for (const auto& u : table) {
        if (u.name == unit) return u.factor;
    }
    throw std::invalid_argument("unknown unit '" + std::string(unit) + "' in '" + std::string(text) + "'");
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{}) {
        throw std::invalid_argument("expected a number in '" + std::string(text) + "'");
    }
    const std::string_view unit = trim(t.substr(static_cast<std::size_t>(ptr - t.data())));
    if (unit.empty()) return value;
    switch (dim) {
        case Dimension::dimensionless:
            throw std::invalid_argument("dimensionless value carries a unit: '" + std::string(text) + "'");
        case Dimension::length:
            return value * lookup(kLength, unit, text);
        case Dimension::mass:
            return value * lookup(kMass, unit, text);
        case Dimension::angular_frequency:
            return value * lookup(kAngularFrequency, unit, text);
        case Dimension::intensity:
            return value * lookup(kIntensity, unit, text);
        case Dimension::angle:
            return value * lookup(kAngle, unit, text);
        case Dimension::energy_frequency:
            return value * lookup(kEnergy, unit, text);
        case Dimension::time:
            return value * lookup(kTime, unit, text);
    }
    throw std::logic_error("unhandled dimension");
}

KeyValueFile KeyValueFile::parse(std::istream& in, std::string source_name) {
    KeyValueFile file;
    file.source_ = std::move(source_name);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument(file.source_ + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key(trim(view.substr(0, eq)));
        const std::string value(trim(view.substr(eq + 1)));
        if (key.empty()) {
            throw std::invalid_argument(file.source_ + ":" + std::to_string(line_no) + ": empty key");
        }
        if (!file.entries_.emplace(key, value).second) {
            throw std::invalid_argument(file.source_ + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
    }
    return file;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return parse(in, path.string());
}

bool KeyValueFile::contains(std::string_view key) const { return entries_.find(key) != entries_.end(); }

const std::string& KeyValueFile::raw(std::string_view key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw std::invalid_argument(source_ + ": missing key '" + std::string(key) + "'");
    return it->second;
}

std::optional<std::string> KeyValueFile::find_raw(std::string_view key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

double KeyValueFile::quantity(std::string_view key, Dimension dim) const {
    try {
        return parse_quantity(raw(key), dim);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(source_ + ": key '" + std::string(key) + "': " + e.what());
    }
}

double KeyValueFile::quantity_or(std::string_view key, Dimension dim, double fallback) const {
    return contains(key) ? quantity(key, dim) : fallback;
}

}  // namespace latgate
