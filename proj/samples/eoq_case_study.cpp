// Lot sizing for a single item with a steady 70 units/day draw.
//
// Prints the economic lot, the (Q,R) alternative and a one-year replay of
// each. Build and run: `cmake --build build && ./build/samples/eoq_case_study`.

#include <cstdio>
#include <vector>

#include "stocklot/stocklot.hpp"

using namespace stocklot;

int main() {
    CostParams p;
    p.annual_demand = 25550;  // units per year
    p.holding_cost = 1;       // per unit-year
    p.ordering_cost = 50;     // per order
    p.shortage_cost = 4;      // per unit short
    p.lead_time_days = 14;

    const double daily = p.annual_demand / 365;
    const LeadTimeDemand ltd{14, 981.75, 520143.86, 0};  // measured 14-day demand moments

    const auto lec = lec_policy(p, daily);
    const auto qr = qr_policy(p, ltd, 0.75);
    const double hist = historical_cost(2580, 24, p.holding_cost, p.ordering_cost);
    const auto cmp = compare_policies(lec, qr, hist);
    std::fputs(io::comparison_table(cmp).c_str(), stdout);

    std::vector<DailyQuantity> demand(365);
    for (int d = 0; d < 365; ++d) demand[static_cast<std::size_t>(d)] = {make_date(2016, 1, 1) + std::chrono::days{d}, daily};

    for (const auto& row : cmp.rows) {
        const auto& r = row.policy;
        const PolicySpec spec{round_to(r.lot_size, 100), r.reorder_point, p.lead_time_days};
        const auto rep = replay(demand, spec, p, spec.lot_size);
        std::printf("replay %-6s Q=%.0f R=%.1f: avg stock %.1f, %ld orders, %ld stockout days, cost %.2f\n",
                    to_string(r.model), spec.lot_size, spec.reorder_point, rep.realized_avg_inventory, rep.orders_placed,
                    rep.stockout_days, rep.realized_cost);
        if (rep.stockout_days != 0) return 1;
    }
    return 0;
}
