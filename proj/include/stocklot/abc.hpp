#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stocklot/error.hpp"

namespace stocklot {

enum class AbcClass { A, B, C };

inline const char* to_string(AbcClass c) {
    switch (c) {
        case AbcClass::A: return "A";
        case AbcClass::B: return "B";
        default: return "C";
    }
}

/// Annual demand and price of one item; monetary_value = demand x price.
struct ItemValue {
    std::string item_id;
    double annual_demand = 0;
    double unit_price = 0;
    double monetary_value = 0;
};

struct AbcEntry {
    ItemValue item;
    double relative_pct = 0;    ///< fraction of the total monetary value
    double cumulative_pct = 0;  ///< running fraction down the ranking
    std::optional<AbcClass> band;
};

/// Cumulative-value cut points; A up to a_cut, B up to b_cut, C beyond.
struct AbcThresholds {
    double a_cut = 0.80;
    double b_cut = 0.95;

    void validate() const {
        detail::require(0 < a_cut && a_cut < b_cut && b_cut <= 1, ErrorKind::Domain,
                        "ABC thresholds must satisfy 0 < a_cut < b_cut <= 1");
    }
};

struct AbcReport {
    std::vector<AbcEntry> entries;
    AbcThresholds thresholds;
    double total_value = 0;

    std::size_t count(AbcClass c) const {
        return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(),
                                                      [c](const AbcEntry& e) { return e.band == c; }));
    }
};

struct ItemDemandPrice {
    std::string item_id;
    double annual_demand = 0;
    double unit_price = 0;
};

/// Ranks items by monetary value, descending, ties broken by item id.
/// Cumulative fractions are running value sums over the total, so the last
/// entry is exactly 1.
inline std::vector<AbcEntry> monetary_ranking(const std::vector<ItemDemandPrice>& items) {
    std::vector<AbcEntry> out;
    out.reserve(items.size());
    double total = 0;
    for (const auto& it : items) {
        detail::require(it.annual_demand >= 0 && it.unit_price >= 0, ErrorKind::Domain,
                        "negative demand or price for '" + it.item_id + "'");
        AbcEntry e;
        e.item = {it.item_id, it.annual_demand, it.unit_price, it.annual_demand * it.unit_price};
        total += e.item.monetary_value;
        out.push_back(std::move(e));
    }
    detail::require(total > 0, ErrorKind::Input, "empty ranking: no item has positive monetary value");

    std::sort(out.begin(), out.end(), [](const AbcEntry& a, const AbcEntry& b) {
        if (a.item.monetary_value != b.item.monetary_value) return a.item.monetary_value > b.item.monetary_value;
        return a.item.item_id < b.item.item_id;
    });

    double running = 0;
    for (auto& e : out) {
        running += e.item.monetary_value;
        e.relative_pct = e.item.monetary_value / total;
        e.cumulative_pct = running / total;
    }
    return out;
}

/// Bands a ranking. An item belongs to the first band whose cut its
/// *preceding* cumulative fraction has not reached, so the item straddling a
/// cut stays in the lower-letter band and A is never empty. Zero-value items
/// are always C.
inline AbcReport classify_abc(std::vector<AbcEntry> ranking, const AbcThresholds& thresholds = {}) {
    thresholds.validate();
    constexpr double eps = 1e-12;

    double prev_cum = 0;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        const auto& e = ranking[i];
        if (i > 0) {
            const auto& p = ranking[i - 1];
            const bool ordered = p.item.monetary_value > e.item.monetary_value ||
                                 (p.item.monetary_value == e.item.monetary_value && p.item.item_id <= e.item.item_id);
            detail::require(ordered && e.cumulative_pct + eps >= p.cumulative_pct, ErrorKind::Contract,
                            "ranking is not sorted by monetary value");
        }
    }

    AbcReport report;
    report.thresholds = thresholds;
    for (auto& e : ranking) {
        if (e.item.monetary_value <= 0)
            e.band = AbcClass::C;
        else if (prev_cum < thresholds.a_cut - eps)
            e.band = AbcClass::A;
        else if (prev_cum < thresholds.b_cut - eps)
            e.band = AbcClass::B;
        else
            e.band = AbcClass::C;
        prev_cum = e.cumulative_pct;
        report.total_value += e.item.monetary_value;
    }
    report.entries = std::move(ranking);
    return report;
}

/// (rank fraction, cumulative value fraction) polyline from (0,0) to (1,1).
inline std::vector<std::pair<double, double>> abc_curve_points(const std::vector<AbcEntry>& ranking) {
    std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
    const double n = static_cast<double>(ranking.size());
    for (std::size_t i = 0; i < ranking.size(); ++i)
        pts.emplace_back(static_cast<double>(i + 1) / n, ranking[i].cumulative_pct);
    return pts;
}

}  // namespace stocklot
