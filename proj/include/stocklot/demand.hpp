#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stocklot/date.hpp"
#include "stocklot/error.hpp"
#include "stocklot/ledger.hpp"

namespace stocklot {

struct DemandOptions {
    UnitBasis basis = UnitBasis::Units;
    /// Divisor for the daily rate. 365 gives whole-number rates for yearly
    /// totals like 25550; set 366 in leap years for exact per-day means.
    int year_days = 365;
};

struct DemandStats {
    std::string item_id;
    double annual_demand = 0;  ///< D, sum of exits in the year
    double daily_rate = 0;     ///< D / period_days
    int period_days = 365;
    UnitBasis basis = UnitBasis::Units;
    std::vector<std::string> warnings;
};

/// Calendar-year consumption of one item. Throws Error{MissingData} for an
/// unknown item; an item without exits yields D = 0 and a warning.
inline DemandStats demand_stats(const MovementLedger& ledger, std::string_view item_id, int year,
                                const DemandOptions& opts = {}) {
    detail::require(opts.year_days > 0, ErrorKind::Domain, "year_days must be positive");
    const auto moves = ledger.movements_for(item_id);
    if (moves.empty()) throw Error(ErrorKind::MissingData, "unknown item '" + std::string(item_id) + "'");

    const auto span = DateRange::calendar_year(year);
    DemandStats s;
    s.item_id = moves.front().item_id;
    s.period_days = opts.year_days;
    s.basis = opts.basis;
    for (const auto& m : moves)
        if (m.direction == Direction::Exit && span.contains(m.date)) s.annual_demand += -m.quantity(opts.basis);
    if (s.annual_demand == 0) s.warnings.push_back("zero demand: no exits for '" + s.item_id + "' in " + std::to_string(year));
    s.daily_rate = s.annual_demand / s.period_days;
    return s;
}

struct DailyQuantity {
    Date date;
    double quantity = 0;
};

/// Per-day sum of exit quantities (positive) over the calendar year,
/// zero-filled. Unknown items give an all-zero series.
inline std::vector<DailyQuantity> daily_exit_series(const MovementLedger& ledger, std::string_view item_id, int year,
                                                    UnitBasis basis = UnitBasis::Units) {
    const auto span = DateRange::calendar_year(year);
    std::vector<DailyQuantity> out(static_cast<std::size_t>(span.days()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i].date = span.first + std::chrono::days{static_cast<long>(i)};
    for (const auto& m : ledger.movements_for(item_id))
        if (m.direction == Direction::Exit && span.contains(m.date))
            out[static_cast<std::size_t>((m.date - span.first).count())].quantity += -m.quantity(basis);
    return out;
}

// ---------------------------------------------------------------------------
// Consumption curve

struct CurvePoint {
    Date date;
    double remaining = 0;
};

/// Remaining stock if the year's entries were all available on day one and
/// only exits drew it down. points[0] is the origin (the day before the
/// span, i.e. the start of the first day) at start_total; later points are
/// end-of-day values on exit dates.
struct ConsumptionCurve {
    std::string item_id;
    DateRange span;
    double start_total = 0;
    std::vector<CurvePoint> points;

    Date origin() const { return span.first - std::chrono::days{1}; }

    /// Constant-consumption line: start_total at the origin, 0 at the end of span.last.
    double reference_at(Date d) const {
        const double elapsed = static_cast<double>((d - origin()).count());
        return start_total * (1.0 - elapsed / static_cast<double>(span.days()));
    }
};

inline ConsumptionCurve consumption_curve(const MovementLedger& ledger, std::string_view item_id, int year,
                                          UnitBasis basis = UnitBasis::Units) {
    ConsumptionCurve c;
    c.span = DateRange::calendar_year(year);
    const auto moves = ledger.movements_for(item_id);
    c.item_id = moves.empty() ? std::string(item_id) : moves.front().item_id;

    for (const auto& m : moves)
        if (m.direction == Direction::Entry && c.span.contains(m.date)) c.start_total += m.quantity(basis);

    double remaining = c.start_total;
    c.points.push_back({c.origin(), remaining});
    for (const auto& m : moves) {
        if (m.direction != Direction::Exit || !c.span.contains(m.date)) continue;
        remaining += m.quantity(basis);
        if (c.points.back().date == m.date)
            c.points.back().remaining = remaining;
        else
            c.points.push_back({m.date, remaining});
    }
    return c;
}

/// Largest daily gap between curve and reference line, over start_total.
/// 0 means consumption was perfectly constant. Because the curve is a step
/// function and the line is linear, the gap over each flat stretch peaks at
/// one of its ends, so only those days are evaluated.
inline double constancy_metric(const ConsumptionCurve& c) {
    detail::require(c.start_total > 0, ErrorKind::Domain, "constancy metric undefined: no entries in the year");
    detail::require(c.points.size() >= 2, ErrorKind::Domain, "constancy metric undefined: no exits in the year");

    double worst = 0;
    const auto gap = [&](Date d, double remaining) { worst = std::max(worst, std::abs(remaining - c.reference_at(d))); };
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const Date from = i == 0 ? c.span.first : c.points[i].date;
        const Date to = i + 1 < c.points.size() ? c.points[i + 1].date - std::chrono::days{1} : c.span.last;
        if (i > 0) gap(c.points[i].date, c.points[i].remaining);
        if (from <= to) {
            gap(from, c.points[i].remaining);
            gap(to, c.points[i].remaining);
        }
    }
    return worst / c.start_total;
}

// ---------------------------------------------------------------------------
// Lead-time demand

struct LeadTimeDemand {
    int window_days = 1;
    double mu_star = 0;      ///< mean demand over a lead-time window
    double sigma2_star = 0;  ///< population variance of window demand
    std::size_t windows = 0;
};

/// Slides a window of `window_days` over a daily demand series in one-day
/// steps and returns the mean and population variance of the window sums.
inline LeadTimeDemand lead_time_demand(std::span<const double> daily, int window_days) {
    detail::require(window_days >= 1, ErrorKind::Domain, "window_days must be >= 1");
    const auto w = static_cast<std::size_t>(window_days);
    detail::require(daily.size() >= w, ErrorKind::Input,
                    "insufficient span: " + std::to_string(daily.size()) + " days for a " +
                        std::to_string(window_days) + "-day window");

    // Each window is summed from scratch; a running sum drifts on fractional kg data.
    std::vector<double> sums(daily.size() - w + 1, 0.0);
    for (std::size_t k = 0; k < sums.size(); ++k)
        for (std::size_t j = k; j < k + w; ++j) sums[k] += daily[j];

    LeadTimeDemand out;
    out.window_days = window_days;
    out.windows = sums.size();
    double mean = 0;
    for (double x : sums) mean += x;
    mean /= static_cast<double>(sums.size());
    double var = 0;
    for (double x : sums) var += (x - mean) * (x - mean);
    out.mu_star = mean;
    out.sigma2_star = var / static_cast<double>(sums.size());
    return out;
}

inline LeadTimeDemand lead_time_demand(const MovementLedger& ledger, std::string_view item_id, int year,
                                       int window_days, UnitBasis basis = UnitBasis::Units) {
    std::vector<double> daily;
    for (const auto& d : daily_exit_series(ledger, item_id, year, basis)) daily.push_back(d.quantity);
    return lead_time_demand(daily, window_days);
}

// ---------------------------------------------------------------------------
// Movement pattern

enum class MovementPattern { Stable, Pathological, JustInTime };

inline const char* to_string(MovementPattern p) {
    switch (p) {
        case MovementPattern::Pathological: return "Pathological";
        case MovementPattern::JustInTime: return "JustInTime";
        default: return "Stable";
    }
}

struct PatternConfig {
    double jit_dwell_days = 3.0;
    double pathology_factor = 2.0;
};

/// Average days a unit spends on hand: stock area / total issued.
/// Infinite when nothing was issued.
inline double mean_dwell_days(const StockTimeline& tl) {
    const double issued = tl.total_issued();
    if (issued <= 0) return std::numeric_limits<double>::infinity();
    return integrated_stock_area(tl) / issued;
}

/// JustInTime when stock barely dwells; Pathological when the standing
/// balance dwarfs what the largest receipt alone would explain.
inline MovementPattern detect_pattern(const StockTimeline& tl, const PatternConfig& cfg = {}) {
    const double dwell = mean_dwell_days(tl);
    if (dwell >= 0 && dwell < cfg.jit_dwell_days) return MovementPattern::JustInTime;
    if (average_inventory(tl) > cfg.pathology_factor * (tl.max_daily_receipt() / 2.0)) return MovementPattern::Pathological;
    return MovementPattern::Stable;
}

}  // namespace stocklot
