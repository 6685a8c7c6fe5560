#pragma once

// Line-oriented `key = value` configuration with `#` comments and unit
// suffixes. Values stay as text until a consumer asks for a typed view, so
// error messages can always name the source line.
//
//   sphere.core_radius  = 150 um
//   slab.top.density    = 19.28 g/cm3
//   pfa.d2              = inf
//   sweep.radii         = 50 um, 100 um, 150 um

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ypfa/core_model.hpp"

namespace ypfa {

double parse_number(std::string_view text);
/// Accepts nm, um (or µm), mm, m; a bare number is metres.
double parse_length(std::string_view text);
/// Accepts g/cm3 and kg/m3; a bare number is kg/m^3.
double parse_density(std::string_view text);
/// A length, or `inf` for the infinite metaphysical plate.
MetaphysicalThickness parse_thickness(std::string_view text);
/// Comma-separated list; empty items are rejected.
std::vector<std::string> split_list(std::string_view text);

class Config {
public:
    struct Entry {
        std::string value;
        std::string origin;  // "file:line", "preset <name>" or the flag
    };

    static Config parse(std::istream& in, const std::string& source_name);
    static Config load(const std::filesystem::path& path);

    /// Later layers win: presets, then files, then command-line flags.
    void set(const std::string& key, std::string value, std::string origin);
    void merge(const Config& other);

    [[nodiscard]] bool has(const std::string& key) const;
    [[nodiscard]] const std::map<std::string, Entry>& entries() const { return entries_; }

    [[nodiscard]] std::optional<double> number(const std::string& key) const;
    [[nodiscard]] std::optional<double> length(const std::string& key) const;
    [[nodiscard]] std::optional<double> density(const std::string& key) const;
    [[nodiscard]] std::optional<MetaphysicalThickness> thickness(const std::string& key) const;
    [[nodiscard]] std::optional<bool> boolean(const std::string& key) const;
    [[nodiscard]] std::optional<std::string> text(const std::string& key) const;
    [[nodiscard]] std::optional<std::vector<double>> length_list(const std::string& key) const;
    [[nodiscard]] std::optional<std::vector<double>> number_list(const std::string& key) const;
    [[nodiscard]] std::optional<std::vector<MetaphysicalThickness>> thickness_list(const std::string& key) const;

    /// Throws InputError naming the first key not in `known`.
    void require_known(const std::vector<std::string>& known) const;

private:
    template <class T, class Fn>
    std::optional<T> typed(const std::string& key, Fn&& fn) const;

    std::map<std::string, Entry> entries_;
};

}  // namespace ypfa
