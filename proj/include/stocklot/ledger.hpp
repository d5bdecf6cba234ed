#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "stocklot/date.hpp"
#include "stocklot/error.hpp"

namespace stocklot {

enum class Direction { Entry, Exit };
enum class UnitBasis { Units, Kg };

inline const char* to_string(Direction d) { return d == Direction::Entry ? "E" : "S"; }
inline const char* to_string(UnitBasis b) { return b == UnitBasis::Units ? "units" : "kg"; }

/// One ledger row. Quantities are signed: positive for Entry, negative for Exit.
struct Movement {
    std::string item_id;
    Direction direction = Direction::Entry;
    Date date{};
    long long qty_units = 0;
    std::optional<double> qty_kg;

    double quantity(UnitBasis basis) const {
        if (basis == UnitBasis::Units) return static_cast<double>(qty_units);
        detail::require(qty_kg.has_value(), ErrorKind::MissingData,
                        "movement of '" + item_id + "' on " + to_iso(date) + " has no kg quantity");
        return *qty_kg;
    }

    friend bool operator==(const Movement&, const Movement&) = default;
};

namespace detail {

inline char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

inline bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return ascii_lower(x) == ascii_lower(y); });
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace detail

/// Movements of one or more items, sorted by (item_id, date, input order).
///
/// Item ids that differ only in ASCII case are merged under the first
/// spelling seen (ledgers typed by hand mix "Item C" and "item C").
class MovementLedger {
public:
    MovementLedger() = default;

    explicit MovementLedger(std::vector<Movement> movements, std::vector<std::string> warnings = {},
                            bool fold_item_case = true)
        : movements_(std::move(movements)), warnings_(std::move(warnings)) {
        if (fold_item_case) canonicalize_ids();
        std::stable_sort(movements_.begin(), movements_.end(), [](const Movement& a, const Movement& b) {
            if (a.item_id != b.item_id) return a.item_id < b.item_id;
            return a.date < b.date;
        });
        for (const auto& m : movements_) {
            if (!period_) {
                period_ = DateRange{m.date, m.date};
            } else {
                period_->first = std::min(period_->first, m.date);
                period_->last = std::max(period_->last, m.date);
            }
        }
    }

    const std::vector<Movement>& movements() const { return movements_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    std::optional<DateRange> period() const { return period_; }
    bool empty() const { return movements_.empty(); }

    /// Distinct item ids in sorted order.
    std::vector<std::string> items() const {
        std::vector<std::string> out;
        for (const auto& m : movements_)
            if (out.empty() || out.back() != m.item_id) out.push_back(m.item_id);
        return out;
    }

    /// Stored spelling of `id`, matched case-insensitively.
    std::optional<std::string> find_item(std::string_view id) const {
        id = detail::trim(id);
        for (const auto& m : movements_)
            if (detail::iequals(m.item_id, id)) return m.item_id;
        return std::nullopt;
    }

    /// Contiguous run of movements for `id` (empty when absent).
    std::span<const Movement> movements_for(std::string_view id) const {
        const auto canonical = find_item(id);
        if (!canonical) return {};
        auto [lo, hi] = std::equal_range(movements_.begin(), movements_.end(), *canonical,
                                         [](const auto& a, const auto& b) { return key(a) < key(b); });
        return {lo, hi};
    }

private:
    static std::string_view key(const Movement& m) { return m.item_id; }
    static std::string_view key(const std::string& s) { return s; }

    void canonicalize_ids() {
        std::vector<std::string> seen;
        for (auto& m : movements_) {
            auto it = std::find_if(seen.begin(), seen.end(), [&](const std::string& s) { return detail::iequals(s, m.item_id); });
            if (it == seen.end())
                seen.push_back(m.item_id);
            else
                m.item_id = *it;
        }
    }

    std::vector<Movement> movements_;
    std::vector<std::string> warnings_;
    std::optional<DateRange> period_;
};

// ---------------------------------------------------------------------------
// Parsing

enum class DateFormat { DayMonthYear, Iso };
enum class HeaderMode { Auto, Present, Absent };

struct FormatConfig {
    char delimiter = ';';
    char decimal_separator = ',';
    DateFormat date_format = DateFormat::DayMonthYear;
    HeaderMode header = HeaderMode::Auto;
    bool fold_item_case = true;

    /// Layout written by to_csv(): comma-delimited, ISO dates, dot decimals.
    static FormatConfig normalized() { return {',', '.', DateFormat::Iso, HeaderMode::Present, true}; }
};

namespace detail {

/// Splits one line on `delim`, honouring double-quoted fields.
inline std::vector<std::string> split_fields(std::string_view line, char delim) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delim) {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    for (auto& f : out) f = std::string(trim(f));
    return out;
}

inline std::optional<Direction> parse_direction(std::string_view s) {
    if (iequals(s, "E")) return Direction::Entry;
    if (iequals(s, "S")) return Direction::Exit;
    return std::nullopt;
}

inline std::optional<long long> parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

inline std::optional<double> parse_decimal(std::string_view s, char decimal_separator) {
    std::string buf(s);
    if (!buf.empty() && buf.front() == '+') buf.erase(0, 1);
    if (decimal_separator != '.') {
        if (buf.find('.') != std::string::npos) return std::nullopt;
        std::replace(buf.begin(), buf.end(), decimal_separator, '.');
    }
    double v = 0;
    auto [p, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{} || p != buf.data() + buf.size() || buf.empty()) return std::nullopt;
    return v;
}

inline std::string format_decimal(double v, char decimal_separator) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, p);
    if (decimal_separator != '.') std::replace(s.begin(), s.end(), '.', decimal_separator);
    return s;
}

}  // namespace detail

/// Parses a delimiter-separated ledger: item, movement code (E/S), date,
/// quantity in units, optional quantity in kg.
///
/// Throws ParseError (with line number) on a malformed row and Error{Input}
/// when no data rows are present. Rows whose quantity sign disagrees with the
/// movement code are repaired to the code and reported in warnings().
inline MovementLedger parse_ledger(std::string_view text, const FormatConfig& cfg = {}) {
    std::vector<Movement> rows;
    std::vector<std::string> warnings;
    std::size_t line_no = 0;
    bool first_content_line = true;

    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (detail::trim(raw).empty()) continue;

        const auto fields = detail::split_fields(raw, cfg.delimiter);
        if (first_content_line) {
            first_content_line = false;
            const bool header = cfg.header == HeaderMode::Present ||
                                (cfg.header == HeaderMode::Auto &&
                                 (fields.size() < 2 || !detail::parse_direction(fields[1])));
            if (header) continue;
        }
        if (fields.size() < 4 || fields.size() > 5)
            throw ParseError(line_no, "expected 4 or 5 fields, found " + std::to_string(fields.size()));

        Movement m;
        m.item_id = fields[0];
        if (m.item_id.empty()) throw ParseError(line_no, "empty item name");

        const auto dir = detail::parse_direction(fields[1]);
        if (!dir) throw ParseError(line_no, "unknown movement code '" + fields[1] + "'");
        m.direction = *dir;

        const auto date = cfg.date_format == DateFormat::DayMonthYear ? parse_dmy(fields[2]) : parse_iso(fields[2]);
        if (!date) throw ParseError(line_no, "malformed date '" + fields[2] + "'");
        m.date = *date;

        const auto units = detail::parse_integer(fields[3]);
        if (!units) throw ParseError(line_no, "non-numeric quantity '" + fields[3] + "'");
        if (*units == 0) throw ParseError(line_no, "zero quantity");
        m.qty_units = *units;

        if (fields.size() == 5 && !fields[4].empty()) {
            const auto kg = detail::parse_decimal(fields[4], cfg.decimal_separator);
            if (!kg) throw ParseError(line_no, "non-numeric kg quantity '" + fields[4] + "'");
            m.qty_kg = *kg;
        }

        const long long sign = m.direction == Direction::Entry ? 1 : -1;
        if (m.qty_units * sign < 0) {
            warnings.push_back("line " + std::to_string(line_no) + ": quantity sign disagrees with movement code " +
                               to_string(m.direction) + ", sign repaired");
            m.qty_units = -m.qty_units;
        }
        if (m.qty_kg && *m.qty_kg * static_cast<double>(sign) < 0) m.qty_kg = -*m.qty_kg;

        rows.push_back(std::move(m));
    }

    if (rows.empty()) throw Error(ErrorKind::Input, "empty ledger");
    return MovementLedger(std::move(rows), std::move(warnings), cfg.fold_item_case);
}

/// Writes the ledger in `cfg` layout (normalized by default) with a header row.
inline std::string to_csv(const MovementLedger& ledger, const FormatConfig& cfg = FormatConfig::normalized()) {
    const auto quote = [&](const std::string& s) {
        if (s.find(cfg.delimiter) == std::string::npos && s.find('"') == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + '"';
    };
    const auto date = [&](Date d) {
        if (cfg.date_format == DateFormat::Iso) return to_iso(d);
        const std::chrono::year_month_day ymd{d};
        char buf[16];
        std::snprintf(buf, sizeof buf, "%02u/%02u/%04d", static_cast<unsigned>(ymd.day()),
                      static_cast<unsigned>(ymd.month()), static_cast<int>(ymd.year()));
        return std::string(buf);
    };

    const char d = cfg.delimiter;
    std::string out = std::string("item") + d + "direction" + d + "date" + d + "qty_units" + d + "qty_kg\n";
    for (const auto& m : ledger.movements()) {
        out += quote(m.item_id);
        out += d;
        out += to_string(m.direction);
        out += d;
        out += date(m.date);
        out += d;
        out += std::to_string(m.qty_units);
        out += d;
        if (m.qty_kg) out += detail::format_decimal(*m.qty_kg, cfg.decimal_separator);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Stock timeline

/// End-of-day stock level on a day with activity (or the period start).
struct StockPoint {
    Date date;
    double level = 0;
    double received = 0;  ///< sum of entries that day
    double issued = 0;    ///< sum of exits that day, positive
};

/// Right-continuous step function of on-hand stock over a period.
struct StockTimeline {
    std::string item_id;
    DateRange period;
    UnitBasis unit_basis = UnitBasis::Units;
    double opening_level = 0;  ///< level before the first day's movements
    std::vector<StockPoint> points;
    std::vector<std::string> warnings;

    double level_at(Date d) const {
        auto it = std::upper_bound(points.begin(), points.end(), d,
                                   [](Date x, const StockPoint& p) { return x < p.date; });
        return it == points.begin() ? opening_level : std::prev(it)->level;
    }

    bool has_negative_level() const {
        return opening_level < 0 ||
               std::any_of(points.begin(), points.end(), [](const StockPoint& p) { return p.level < 0; });
    }

    double total_received() const {
        double s = 0;
        for (const auto& p : points) s += p.received;
        return s;
    }
    double total_issued() const {
        double s = 0;
        for (const auto& p : points) s += p.issued;
        return s;
    }
    double max_daily_receipt() const {
        double s = 0;
        for (const auto& p : points) s = std::max(s, p.received);
        return s;
    }
};

/// Builds the stock timeline of `item_id` over `period`.
///
/// The opening level is `initial_level` (default 0) plus every movement dated
/// before the period, so level(t) = initial + sum of quantities dated <= t.
/// Throws Error{MissingData} for an unknown item unless `initial_level` is given.
inline StockTimeline stock_timeline(const MovementLedger& ledger, std::string_view item_id, DateRange period,
                                    std::optional<double> initial_level = std::nullopt,
                                    UnitBasis basis = UnitBasis::Units) {
    const auto moves = ledger.movements_for(item_id);
    if (moves.empty() && !initial_level)
        throw Error(ErrorKind::MissingData, "unknown item '" + std::string(item_id) + "'");

    StockTimeline tl;
    tl.item_id = moves.empty() ? std::string(item_id) : moves.front().item_id;
    tl.period = period;
    tl.unit_basis = basis;
    tl.opening_level = initial_level.value_or(0.0);

    auto it = moves.begin();
    for (; it != moves.end() && it->date < period.first; ++it) tl.opening_level += it->quantity(basis);

    double level = tl.opening_level;
    tl.points.push_back({period.first, level, 0, 0});
    for (; it != moves.end() && it->date <= period.last; ++it) {
        const double q = it->quantity(basis);
        if (tl.points.back().date != it->date) tl.points.push_back({it->date, level, 0, 0});
        auto& p = tl.points.back();
        level += q;
        p.level = level;
        (q > 0 ? p.received : p.issued) += std::abs(q);
    }

    if (tl.opening_level < 0) tl.warnings.push_back("negative opening level " + detail::format_decimal(tl.opening_level, '.'));
    for (const auto& p : tl.points) {
        if (p.level < 0) {
            tl.warnings.push_back("negative stock level from " + to_iso(p.date) +
                                  " (book/physical mismatch?); negative segments reduce the integrated area");
            break;
        }
    }
    return tl;
}

/// Integral of the level over the period in unit-days: each end-of-day level
/// counts for one day.
inline double integrated_stock_area(const StockTimeline& tl) {
    detail::require(tl.period.days() > 0, ErrorKind::Domain, "degenerate period");
    double area = 0;
    for (std::size_t i = 0; i < tl.points.size(); ++i) {
        const Date end = i + 1 < tl.points.size() ? tl.points[i + 1].date : tl.period.last + std::chrono::days{1};
        area += tl.points[i].level * static_cast<double>((end - tl.points[i].date).count());
    }
    return area;
}

/// Time-weighted mean level over the period.
inline double average_inventory(const StockTimeline& tl) {
    return integrated_stock_area(tl) / static_cast<double>(tl.period.days());
}

/// Number of Entry rows (replenishment orders) of the item within the period.
inline long order_count(const MovementLedger& ledger, std::string_view item_id, DateRange period) {
    const auto moves = ledger.movements_for(item_id);
    return static_cast<long>(std::count_if(moves.begin(), moves.end(), [&](const Movement& m) {
        return m.direction == Direction::Entry && period.contains(m.date);
    }));
}

}  // namespace stocklot
