#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "stocklot/error.hpp"
#include "stocklot/ledger.hpp"

namespace stocklot {

/// Flat `key = value` settings file. `#` starts a comment; keys may contain
/// spaces (item names), so only the first '=' separates key from value.
///
/// Per-item settings use `item.<id>.<key>`; prices use `price.<id>`. Item
/// parts of keys match ledger ids case-insensitively.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::string_view text) {
        KeyValueConfig cfg;
        std::size_t line_no = 0;
        while (!text.empty()) {
            const auto nl = text.find('\n');
            std::string_view line = text.substr(0, nl);
            text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
            const auto key = detail::trim(line.substr(0, eq));
            if (key.empty()) throw ParseError(line_no, "empty key");
            cfg.values_[std::string(key)] = std::string(detail::trim(line.substr(eq + 1)));
        }
        return cfg;
    }

    static KeyValueConfig load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(ErrorKind::Input, "cannot read config '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse(ss.str());
    }

    void set(std::string key, std::string value) { values_[std::move(key)] = std::move(value); }
    bool contains(const std::string& key) const { return values_.count(key) > 0; }
    const std::map<std::string, std::string>& entries() const { return values_; }

    std::optional<std::string> get(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<double> get_double(const std::string& key) const {
        const auto v = get(key);
        if (!v) return std::nullopt;
        const auto d = detail::parse_decimal(*v, '.');
        if (!d) throw Error(ErrorKind::Input, "config key '" + key + "' is not a number: '" + *v + "'");
        return d;
    }

    std::optional<int> get_int(const std::string& key) const {
        const auto v = get(key);
        if (!v) return std::nullopt;
        const auto i = detail::parse_integer(*v);
        if (!i) throw Error(ErrorKind::Input, "config key '" + key + "' is not an integer: '" + *v + "'");
        return static_cast<int>(*i);
    }

    /// `a,b` pair of numbers, e.g. ABC thresholds.
    std::optional<std::pair<double, double>> get_pair(const std::string& key) const {
        const auto v = get(key);
        if (!v) return std::nullopt;
        return parse_pair(*v, key);
    }

    static std::pair<double, double> parse_pair(std::string_view v, const std::string& what) {
        const auto comma = v.find(',');
        std::optional<double> a, b;
        if (comma != std::string_view::npos) {
            a = detail::parse_decimal(detail::trim(v.substr(0, comma)), '.');
            b = detail::parse_decimal(detail::trim(v.substr(comma + 1)), '.');
        }
        if (!a || !b) throw Error(ErrorKind::Input, "'" + what + "' must be two numbers 'a,b'");
        return {*a, *b};
    }

    /// `<prefix><item>` matched case-insensitively on the item part.
    std::optional<std::string> find_item_key(std::string_view prefix, std::string_view item, std::string_view suffix = {}) const {
        for (const auto& [k, v] : values_) {
            if (k.size() != prefix.size() + item.size() + suffix.size()) continue;
            if (k.compare(0, prefix.size(), prefix) != 0) continue;
            if (k.compare(k.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
            if (detail::iequals(std::string_view(k).substr(prefix.size(), item.size()), item)) return k;
        }
        return std::nullopt;
    }

    /// `item.<id>.<key>` if present, else the global `<key>`.
    std::optional<double> item_double(std::string_view item, const std::string& key) const {
        if (const auto k = find_item_key("item.", item, "." + key)) return get_double(*k);
        return get_double(key);
    }

    std::optional<double> price(std::string_view item) const {
        if (const auto k = find_item_key("price.", item)) return get_double(*k);
        return std::nullopt;
    }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace stocklot
