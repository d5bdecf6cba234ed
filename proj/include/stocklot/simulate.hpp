#pragma once

#include <algorithm>
#include <deque>
#include <span>
#include <string_view>
#include <vector>

#include "stocklot/demand.hpp"
#include "stocklot/ledger.hpp"
#include "stocklot/policy.hpp"

namespace stocklot {

struct PolicySpec {
    double lot_size = 0;       ///< Q
    double reorder_point = 0;  ///< R
    int lead_time_days = 0;
};

struct TraceRow {
    Date date;
    double on_hand = 0;  ///< end of day
    double on_order = 0;
    double demand = 0;
    double served = 0;
    double unmet = 0;
    double received = 0;
    bool ordered = false;
};

struct SimulationReport {
    double realized_avg_inventory = 0;
    long orders_placed = 0;
    long stockout_days = 0;
    double unmet_demand = 0;
    double total_demand = 0;
    double total_served = 0;
    double total_received = 0;
    double initial_level = 0;
    double final_on_hand = 0;
    double final_on_order = 0;
    double realized_cost = 0;  ///< avg inventory * Cm + orders * Cp
    double fill_rate = 1;      ///< 1 - unmet / demand
    std::vector<TraceRow> trace;
};

/// Daily exit quantities of the item over the calendar year, zero-filled.
inline std::vector<DailyQuantity> extract_daily_demand(const MovementLedger& ledger, std::string_view item_id, int year,
                                                       UnitBasis basis = UnitBasis::Units) {
    return daily_exit_series(ledger, item_id, year, basis);
}

/// Replays a (Q,R) policy day by day under lost sales.
///
/// Each day: receive orders due, serve demand from stock (shortfall is lost),
/// then review. If inventory position (on hand + on order) is <= R and nothing
/// arrived that day, order Q. An order placed in day i's review serves demand
/// from day i + lead_time on; with zero lead time it lands immediately.
/// Lot sizes <= 0 never order.
inline SimulationReport replay(std::span<const DailyQuantity> demand, const PolicySpec& spec, const CostParams& costs,
                               double initial_level, bool keep_trace = false) {
    struct Pending {
        std::size_t due;
        double qty;
    };
    std::deque<Pending> pipeline;

    SimulationReport rep;
    rep.initial_level = initial_level;
    double on_hand = initial_level;
    double on_order = 0;
    double area = 0;

    for (std::size_t day = 0; day < demand.size(); ++day) {
        TraceRow row;
        row.date = demand[day].date;

        while (!pipeline.empty() && pipeline.front().due == day) {
            on_hand += pipeline.front().qty;
            on_order -= pipeline.front().qty;
            row.received += pipeline.front().qty;
            pipeline.pop_front();
        }

        row.demand = std::max(0.0, demand[day].quantity);
        row.served = std::min(std::max(on_hand, 0.0), row.demand);
        row.unmet = row.demand - row.served;
        on_hand -= row.served;

        if (spec.lot_size > 0 && row.received == 0 && on_hand + on_order <= spec.reorder_point) {
            row.ordered = true;
            ++rep.orders_placed;
            if (spec.lead_time_days <= 0) {
                on_hand += spec.lot_size;
                row.received += spec.lot_size;
            } else {
                pipeline.push_back({day + static_cast<std::size_t>(spec.lead_time_days), spec.lot_size});
                on_order += spec.lot_size;
            }
        }

        area += on_hand;
        rep.total_demand += row.demand;
        rep.total_served += row.served;
        rep.total_received += row.received;
        rep.unmet_demand += row.unmet;
        if (row.unmet > 0) ++rep.stockout_days;

        row.on_hand = on_hand;
        row.on_order = on_order;
        if (keep_trace) rep.trace.push_back(row);
    }

    rep.final_on_hand = on_hand;
    rep.final_on_order = on_order;
    rep.realized_avg_inventory = demand.empty() ? initial_level : area / static_cast<double>(demand.size());
    rep.realized_cost = historical_cost(rep.realized_avg_inventory, rep.orders_placed, costs.holding_cost, costs.ordering_cost);
    rep.fill_rate = rep.total_demand > 0 ? 1.0 - rep.unmet_demand / rep.total_demand : 1.0;
    return rep;
}

}  // namespace stocklot
