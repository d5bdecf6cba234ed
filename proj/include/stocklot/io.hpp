#pragma once

// CSV and JSON exports of every analysis result. JSON keys keep insertion
// order so identical inputs give byte-identical files.

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stocklot/abc.hpp"
#include "stocklot/demand.hpp"
#include "stocklot/ledger.hpp"
#include "stocklot/policy.hpp"
#include "stocklot/simulate.hpp"

namespace stocklot::io {

using Json = nlohmann::ordered_json;

inline std::string fixed(double v, int decimals = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s(buf);
    if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);  // no "-0.00"
    return s;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + '"';
}

// ---------------------------------------------------------------------------
// ledger

inline Json to_json(const MovementLedger& ledger) {
    Json j;
    if (const auto p = ledger.period()) j["period"] = {{"first", to_iso(p->first)}, {"last", to_iso(p->last)}};
    Json rows = Json::array();
    for (const auto& m : ledger.movements()) {
        Json r = {{"item", m.item_id}, {"direction", to_string(m.direction)}, {"date", to_iso(m.date)},
                  {"qty_units", m.qty_units}};
        r["qty_kg"] = m.qty_kg ? Json(*m.qty_kg) : Json(nullptr);
        rows.push_back(std::move(r));
    }
    j["movements"] = std::move(rows);
    j["warnings"] = ledger.warnings();
    return j;
}

inline std::string timeline_csv(const StockTimeline& tl) {
    std::string out = "date,level,received,issued\n";
    for (const auto& p : tl.points)
        out += to_iso(p.date) + "," + fixed(p.level) + "," + fixed(p.received) + "," + fixed(p.issued) + "\n";
    return out;
}

inline Json to_json(const StockTimeline& tl) {
    Json pts = Json::array();
    for (const auto& p : tl.points)
        pts.push_back({{"date", to_iso(p.date)}, {"level", p.level}, {"received", p.received}, {"issued", p.issued}});
    return {{"item", tl.item_id},
            {"period", {{"first", to_iso(tl.period.first)}, {"last", to_iso(tl.period.last)}}},
            {"unit_basis", to_string(tl.unit_basis)},
            {"opening_level", tl.opening_level},
            {"points", std::move(pts)},
            {"warnings", tl.warnings}};
}

// ---------------------------------------------------------------------------
// abc

inline std::string abc_csv(const AbcReport& r) {
    std::string out = "item,annual_demand,unit_price,monetary_value,relative_pct,cumulative_pct,class\n";
    for (const auto& e : r.entries) {
        out += csv_field(e.item.item_id) + "," + fixed(e.item.annual_demand, 2) + "," + fixed(e.item.unit_price, 2) + "," +
               fixed(e.item.monetary_value, 2) + "," + fixed(100 * e.relative_pct, 2) + "%," +
               fixed(100 * e.cumulative_pct, 2) + "%," + (e.band ? to_string(*e.band) : "") + "\n";
    }
    return out;
}

inline Json to_json(const AbcReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        entries.push_back({{"item", e.item.item_id},
                           {"annual_demand", e.item.annual_demand},
                           {"unit_price", e.item.unit_price},
                           {"monetary_value", e.item.monetary_value},
                           {"relative_pct", e.relative_pct},
                           {"cumulative_pct", e.cumulative_pct},
                           {"class", e.band ? to_string(*e.band) : ""}});
    }
    return {{"thresholds", {{"a_cut", r.thresholds.a_cut}, {"b_cut", r.thresholds.b_cut}}},
            {"total_value", r.total_value},
            {"counts", {{"A", r.count(AbcClass::A)}, {"B", r.count(AbcClass::B)}, {"C", r.count(AbcClass::C)}}},
            {"entries", std::move(entries)}};
}

inline std::string curve_points_csv(const std::vector<std::pair<double, double>>& pts) {
    std::string out = "item_fraction,cumulative_pct\n";
    for (const auto& [x, y] : pts) out += fixed(x) + "," + fixed(y) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// demand

inline std::string consumption_csv(const ConsumptionCurve& c) {
    std::string out = "date,remaining,reference\n";
    for (const auto& p : c.points) out += to_iso(p.date) + "," + fixed(p.remaining) + "," + fixed(c.reference_at(p.date)) + "\n";
    if (c.points.empty() || c.points.back().date != c.span.last)
        out += to_iso(c.span.last) + "," + fixed(c.points.empty() ? c.start_total : c.points.back().remaining) + "," +
               fixed(c.reference_at(c.span.last)) + "\n";
    return out;
}

inline Json to_json(const DemandStats& s) {
    return {{"item", s.item_id},         {"unit_basis", to_string(s.basis)}, {"annual_demand", s.annual_demand},
            {"daily_rate", s.daily_rate}, {"period_days", s.period_days},    {"warnings", s.warnings}};
}

inline Json to_json(const LeadTimeDemand& l) {
    return {{"window_days", l.window_days}, {"windows", l.windows}, {"mu_star", l.mu_star}, {"sigma2_star", l.sigma2_star}};
}

// ---------------------------------------------------------------------------
// policy

struct DisplayOptions {
    double round_step = 100;  ///< lot rounding for display; <= 0 keeps raw values
    /// Reorder points are shown to whole units when rounding is on.
    double reorder_step() const { return round_step > 0 ? 1.0 : 0.0; }
};

inline Json to_json(const CostBreakdown& c) {
    return {{"lot_size", c.lot_size},       {"holding", c.holding}, {"ordering", c.ordering},
            {"acquisition", c.acquisition}, {"total", c.total}};
}

inline Json to_json(const PolicyResult& r, const DisplayOptions& d = {}) {
    Json j = {{"model", to_string(r.model)},
              {"lot_size", r.lot_size},
              {"reorder_point", r.reorder_point},
              {"lot_size_display", round_to(r.lot_size, d.round_step)},
              {"reorder_point_display", round_to(r.reorder_point, d.reorder_step())},
              {"predicted_annual_cost", r.predicted_annual_cost}};
    if (r.service_level) j["service_level"] = *r.service_level;
    j["cost_breakdown"] = to_json(r.breakdown);
    return j;
}

inline Json to_json(const PolicyComparison& c, const DisplayOptions& d = {}) {
    Json rows = Json::array();
    for (const auto& row : c.rows) {
        Json r = to_json(row.policy, d);
        r["savings"] = row.savings;
        rows.push_back(std::move(r));
    }
    Json j = {{"historical_cost", c.historical_cost}, {"policies", std::move(rows)}};
    j["savings_upper_bound"] = c.savings_upper_bound;
    if (c.savings_upper_bound)
        j["notes"] = {"holding and ordering costs do not fall linearly with stock; savings are an upper estimate"};
    return j;
}

/// Fixed-width table: model, lot, reorder point, predicted cost, savings.
inline std::string comparison_table(const PolicyComparison& c, const DisplayOptions& d = {}) {
    const int money = d.round_step > 0 ? 0 : 2;
    char line[160];
    std::string out;
    std::snprintf(line, sizeof line, "%-8s %12s %14s %16s %12s\n", "model", "lot size", "reorder point", "annual cost",
                  "savings");
    out += line;
    for (const auto& row : c.rows) {
        const auto& p = row.policy;
        std::snprintf(line, sizeof line, "%-8s %12s %14s %16s %12s\n", to_string(p.model),
                      fixed(round_to(p.lot_size, d.round_step), money).c_str(),
                      fixed(round_to(p.reorder_point, d.reorder_step()), money).c_str(),
                      fixed(p.predicted_annual_cost, 2).c_str(), fixed(row.savings, 2).c_str());
        out += line;
    }
    std::snprintf(line, sizeof line, "historical annual cost: %s\n", fixed(c.historical_cost, 2).c_str());
    out += line;
    if (c.savings_upper_bound) out += "note: savings assume costs fall linearly with stock; treat them as an upper estimate\n";
    return out;
}

inline std::string cost_curve_csv(const std::vector<CostBreakdown>& curve) {
    std::string out = "lot_size,holding,ordering,total\n";
    for (const auto& c : curve) out += fixed(c.lot_size) + "," + fixed(c.holding) + "," + fixed(c.ordering) + "," + fixed(c.total) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// simulate

inline Json to_json(const SimulationReport& r) {
    return {{"realized_avg_inventory", r.realized_avg_inventory},
            {"orders_placed", r.orders_placed},
            {"stockout_days", r.stockout_days},
            {"unmet_demand", r.unmet_demand},
            {"total_demand", r.total_demand},
            {"total_served", r.total_served},
            {"total_received", r.total_received},
            {"initial_level", r.initial_level},
            {"final_on_hand", r.final_on_hand},
            {"final_on_order", r.final_on_order},
            {"realized_cost", r.realized_cost},
            {"fill_rate", r.fill_rate}};
}

inline std::string trace_csv(const SimulationReport& r) {
    std::string out = "date,on_hand,on_order,served,unmet\n";
    for (const auto& t : r.trace)
        out += to_iso(t.date) + "," + fixed(t.on_hand) + "," + fixed(t.on_order) + "," + fixed(t.served) + "," + fixed(t.unmet) + "\n";
    return out;
}

}  // namespace stocklot::io
