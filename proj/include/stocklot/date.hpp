#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "stocklot/error.hpp"

namespace stocklot {

/// Calendar day. Arithmetic in whole days via std::chrono::days.
using Date = std::chrono::sys_days;

inline Date make_date(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}};
}

/// Inclusive [first, last] range of days.
struct DateRange {
    Date first;
    Date last;

    long days() const { return (last - first).count() + 1; }
    bool contains(Date d) const { return first <= d && d <= last; }

    static DateRange calendar_year(int y) { return {make_date(y, 1, 1), make_date(y, 12, 31)}; }

    friend bool operator==(const DateRange&, const DateRange&) = default;
};

inline int year_of(Date d) {
    return static_cast<int>(std::chrono::year_month_day{d}.year());
}

/// YYYY-MM-DD
inline std::string to_iso(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

namespace detail {

inline std::optional<int> parse_uint(std::string_view s) {
    if (s.empty() || s.size() > 9) return std::nullopt;
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

inline std::optional<Date> checked_date(std::optional<int> y, std::optional<int> m, std::optional<int> d) {
    if (!y || !m || !d) return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                                          std::chrono::day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date{ymd};
}

}  // namespace detail

/// DD/MM/YYYY; returns nullopt for anything else, including impossible days.
inline std::optional<Date> parse_dmy(std::string_view s) {
    const auto a = s.find('/');
    const auto b = s.find('/', a == std::string_view::npos ? a : a + 1);
    if (a == std::string_view::npos || b == std::string_view::npos) return std::nullopt;
    return detail::checked_date(detail::parse_uint(s.substr(b + 1)), detail::parse_uint(s.substr(a + 1, b - a - 1)),
                                detail::parse_uint(s.substr(0, a)));
}

/// YYYY-MM-DD
inline std::optional<Date> parse_iso(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    return detail::checked_date(detail::parse_uint(s.substr(0, 4)), detail::parse_uint(s.substr(5, 2)),
                                detail::parse_uint(s.substr(8, 2)));
}

}  // namespace stocklot
