#include "ypfa/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <utility>

namespace ypfa {

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

// Splits "150 um" / "150um" into number text and unit text.
std::pair<std::string_view, std::string_view> split_unit(std::string_view text) {
    text = trim(text);
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        const bool numeric = (ch >= '0' && ch <= '9') || ch == '.' || ch == '+' || ch == '-';
        const bool exponent = (ch == 'e' || ch == 'E') && i + 1 < text.size() &&
                              ((text[i + 1] >= '0' && text[i + 1] <= '9') || text[i + 1] == '-' ||
                               text[i + 1] == '+');
        if (!numeric && !exponent) break;
        i += exponent ? 2 : 1;
    }
    return {trim(text.substr(0, i)), trim(text.substr(i))};
}

}  // namespace

double parse_number(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw InputError("not a number: '" + std::string(text) + "'");
    }
    return v;
}

double parse_length(std::string_view text) {
    const auto [num, unit] = split_unit(text);
    const double v = parse_number(num);
    if (unit.empty() || unit == "m") return to_si_length(v, LengthUnit::m);
    if (unit == "nm") return to_si_length(v, LengthUnit::nm);
    if (unit == "um" || unit == "\xC2\xB5m" || unit == "micron") return to_si_length(v, LengthUnit::um);
    if (unit == "mm") return to_si_length(v, LengthUnit::mm);
    throw InputError("unknown length unit '" + std::string(unit) + "' (expected nm, um, mm or m)");
}

double parse_density(std::string_view text) {
    const auto [num, unit] = split_unit(text);
    const double v = parse_number(num);
    if (v < 0.0) throw InputError("density must be >= 0: '" + std::string(trim(text)) + "'");
    if (unit.empty() || unit == "kg/m3") return to_si_density(v, DensityUnit::kg_per_m3);
    if (unit == "g/cm3") return to_si_density(v, DensityUnit::g_per_cm3);
    throw InputError("unknown density unit '" + std::string(unit) + "' (expected g/cm3 or kg/m3)");
}

MetaphysicalThickness parse_thickness(std::string_view text) {
    const auto t = trim(text);
    if (t == "inf" || t == "infinite" || t == "INF") return MetaphysicalThickness::infinite();
    return MetaphysicalThickness::finite(parse_length(t));
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto item = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        if (item.empty()) throw InputError("empty item in list '" + std::string(trim(text)) + "'");
        out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

Config Config::parse(std::istream& in, const std::string& source_name) {
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != view.npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const std::string where = source_name + ":" + std::to_string(lineno);
        const auto eq = view.find('=');
        if (eq == view.npos) throw InputError(where + ": expected 'key = value'");
        const std::string key(trim(view.substr(0, eq)));
        const std::string value(trim(view.substr(eq + 1)));
        if (key.empty()) throw InputError(where + ": empty key");
        if (value.empty()) throw InputError(where + ": empty value for '" + key + "'");
        if (cfg.entries_.count(key)) throw InputError(where + ": duplicate key '" + key + "'");
        cfg.entries_[key] = Entry{value, where};
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file '" + path.string() + "'");
    return parse(in, path.string());
}

void Config::set(const std::string& key, std::string value, std::string origin) {
    entries_[key] = Entry{std::move(value), std::move(origin)};
}

void Config::merge(const Config& other) {
    for (const auto& [k, e] : other.entries_) entries_[k] = e;
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

template <class T, class Fn>
std::optional<T> Config::typed(const std::string& key, Fn&& fn) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    try {
        return fn(it->second.value);
    } catch (const InputError& e) {
        throw InputError(it->second.origin + ": " + key + ": " + e.what());
    }
}

std::optional<double> Config::number(const std::string& key) const {
    return typed<double>(key, [](const std::string& v) { return parse_number(v); });
}

std::optional<double> Config::length(const std::string& key) const {
    return typed<double>(key, [](const std::string& v) { return parse_length(v); });
}

std::optional<double> Config::density(const std::string& key) const {
    return typed<double>(key, [](const std::string& v) { return parse_density(v); });
}

std::optional<MetaphysicalThickness> Config::thickness(const std::string& key) const {
    return typed<MetaphysicalThickness>(key, [](const std::string& v) { return parse_thickness(v); });
}

std::optional<bool> Config::boolean(const std::string& key) const {
    return typed<bool>(key, [](const std::string& v) {
        if (v == "true" || v == "yes" || v == "1") return true;
        if (v == "false" || v == "no" || v == "0") return false;
        throw InputError("expected true/false, got '" + v + "'");
    });
}

std::optional<std::string> Config::text(const std::string& key) const {
    return typed<std::string>(key, [](const std::string& v) { return v; });
}

std::optional<std::vector<double>> Config::length_list(const std::string& key) const {
    return typed<std::vector<double>>(key, [](const std::string& v) {
        std::vector<double> out;
        for (const auto& item : split_list(v)) out.push_back(parse_length(item));
        return out;
    });
}

std::optional<std::vector<double>> Config::number_list(const std::string& key) const {
    return typed<std::vector<double>>(key, [](const std::string& v) {
        std::vector<double> out;
        for (const auto& item : split_list(v)) out.push_back(parse_number(item));
        return out;
    });
}

std::optional<std::vector<MetaphysicalThickness>> Config::thickness_list(const std::string& key) const {
    return typed<std::vector<MetaphysicalThickness>>(key, [](const std::string& v) {
        std::vector<MetaphysicalThickness> out;
        for (const auto& item : split_list(v)) out.push_back(parse_thickness(item));
        return out;
    });
}

void Config::require_known(const std::vector<std::string>& known) const {
    for (const auto& [k, e] : entries_) {
        if (std::find(known.begin(), known.end(), k) == known.end()) {
            throw InputError(e.origin + ": unknown key '" + k + "'");
        }
    }
}

}  // namespace ypfa
