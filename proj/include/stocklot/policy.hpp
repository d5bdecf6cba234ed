#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "stocklot/demand.hpp"
#include "stocklot/error.hpp"

namespace stocklot {

/// Inputs of the lot-size cost model. Costs are annual: holding per unit-year,
/// ordering per order, shortage per unit short.
struct CostParams {
    double annual_demand = 0;  ///< D, units/year
    double unit_price = 0;     ///< P; 0 when only holding + ordering matter
    double holding_cost = 0;   ///< Cm
    double ordering_cost = 0;  ///< Cp
    std::optional<double> shortage_cost;  ///< Cf, (Q,R) only
    int lead_time_days = 0;

    void validate() const {
        detail::require(annual_demand > 0, ErrorKind::Domain, "annual demand must be positive");
        detail::require(holding_cost > 0, ErrorKind::Domain, "holding cost must be positive");
        detail::require(ordering_cost > 0, ErrorKind::Domain, "ordering cost must be positive");
        detail::require(unit_price >= 0, ErrorKind::Domain, "unit price must be nonnegative");
        detail::require(!shortage_cost || *shortage_cost > 0, ErrorKind::Domain, "shortage cost must be positive");
        detail::require(lead_time_days >= 0, ErrorKind::Domain, "lead time must be nonnegative");
    }
};

struct CostBreakdown {
    double lot_size = 0;
    double holding = 0;      ///< Q/2 * Cm
    double ordering = 0;     ///< D/Q * Cp
    double acquisition = 0;  ///< D * P
    double total = 0;

    /// Holding plus ordering: the part a lot-size decision can change.
    double operating() const { return holding + ordering; }
};

/// Annual cost of ordering in lots of `lot_size`.
inline CostBreakdown cost_breakdown(double lot_size, const CostParams& p) {
    detail::require(lot_size > 0, ErrorKind::Domain, "lot size must be positive");
    CostBreakdown c;
    c.lot_size = lot_size;
    c.holding = lot_size / 2.0 * p.holding_cost;
    c.ordering = p.annual_demand / lot_size * p.ordering_cost;
    c.acquisition = p.annual_demand * p.unit_price;
    c.total = c.holding + c.ordering + c.acquisition;
    return c;
}

/// Economic order quantity sqrt(2 D Cp / Cm), unrounded.
inline double eoq(const CostParams& p) {
    detail::require(p.annual_demand > 0 && p.ordering_cost > 0 && p.holding_cost > 0, ErrorKind::Domain,
                    "EOQ needs positive demand, ordering and holding cost");
    return std::sqrt(2.0 * p.annual_demand * p.ordering_cost / p.holding_cost);
}

/// Deterministic reorder point: demand consumed during the lead time.
inline double eoq_reorder_point(double daily_rate, int lead_time_days) {
    detail::require(daily_rate >= 0 && lead_time_days >= 0, ErrorKind::Domain,
                    "reorder point needs nonnegative rate and lead time");
    return daily_rate * lead_time_days;
}

/// Realized holding + ordering cost from observed average stock and order count.
inline double historical_cost(double avg_inventory, long orders, double holding_cost, double ordering_cost) {
    return avg_inventory * holding_cost + static_cast<double>(orders) * ordering_cost;
}

/// (Q,R) lot: the EOQ inflated by sqrt((Cf + Cm) / Cf).
inline double qr_lot(const CostParams& p) {
    if (!p.shortage_cost || *p.shortage_cost <= 0)
        throw Error(ErrorKind::MissingData, "(Q,R) lot needs a positive shortage cost");
    const double cf = *p.shortage_cost;
    return eoq(p) * std::sqrt((cf + p.holding_cost) / cf);
}

// ---------------------------------------------------------------------------
// Standard normal

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Inverse of the standard normal CDF. Acklam's rational approximation
/// (relative error ~1e-9) followed by one Halley step against the erfc-based
/// CDF, which brings it to near machine precision.
inline double normal_quantile(double p) {
    detail::require(p > 0 && p < 1, ErrorKind::Domain, "quantile probability must lie in (0,1)");
    if (p > 0.5) return -normal_quantile(1.0 - p);

    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                             1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                             6.680131188771972e+01, -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                             -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                             3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }

    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

// ---------------------------------------------------------------------------
// (Q,R) reorder point

/// Lead-time demand ~ Normal(mu*, sigma2*).
struct NormalLeadTime {
    double quantile(const LeadTimeDemand& ltd, double service_level) const {
        return ltd.mu_star + normal_quantile(service_level) * std::sqrt(ltd.sigma2_star);
    }
};

/// Lead-time demand uniform on mu* +- sqrt(3 sigma2*) (same mean and variance).
struct UniformLeadTime {
    double quantile(const LeadTimeDemand& ltd, double service_level) const {
        const double half = std::sqrt(3.0 * ltd.sigma2_star);
        return ltd.mu_star + (2.0 * service_level - 1.0) * half;
    }
};

/// Reorder point giving probability `service_level` of no stockout during
/// the lead time, under the chosen lead-time demand model.
template <class Model = NormalLeadTime>
double qr_reorder_point(const LeadTimeDemand& ltd, double service_level, const Model& model = {}) {
    detail::require(service_level > 0 && service_level < 1, ErrorKind::Domain, "service level must lie in (0,1)");
    detail::require(ltd.sigma2_star >= 0, ErrorKind::Domain, "lead-time variance must be nonnegative");
    return model.quantile(ltd, service_level);
}

// ---------------------------------------------------------------------------
// Unit costs from aggregate expenses

struct AggregateExpenses {
    double storage_expenses = 0;  ///< CM, all storage spending in the year
    double order_expenses = 0;    ///< CP, all ordering spending in the year
    double stock_area = 0;        ///< A_t, summed unit-days over the items
    long orders = 0;              ///< E_t, summed replenishment orders
};

struct UnitCosts {
    double holding_per_unit_day = 0;
    double holding_per_unit_year = 0;  ///< what the annual cost model consumes
    double ordering_per_order = 0;
};

/// Cm = CM / A_t (per unit-day, then x year_days), Cp = CP / E_t.
inline UnitCosts unit_costs(const AggregateExpenses& e, int year_days = 365) {
    detail::require(e.storage_expenses >= 0 && e.order_expenses >= 0, ErrorKind::Domain,
                    "aggregate expenses must be nonnegative");
    if (e.stock_area <= 0 || e.orders <= 0)
        throw Error(ErrorKind::MissingData, "insufficient data: stock area and order count must be positive");
    UnitCosts u;
    u.holding_per_unit_day = e.storage_expenses / e.stock_area;
    u.holding_per_unit_year = u.holding_per_unit_day * year_days;
    u.ordering_per_order = e.order_expenses / static_cast<double>(e.orders);
    return u;
}

// ---------------------------------------------------------------------------
// Policies

enum class PolicyModel { LEC, QR };

inline const char* to_string(PolicyModel m) { return m == PolicyModel::LEC ? "LEC" : "(Q,R)"; }

struct PolicyResult {
    PolicyModel model = PolicyModel::LEC;
    double lot_size = 0;
    double reorder_point = 0;
    double predicted_annual_cost = 0;  ///< holding + ordering at lot_size
    std::optional<double> service_level;
    CostBreakdown breakdown;
};

inline PolicyResult lec_policy(const CostParams& p, double daily_rate) {
    p.validate();
    PolicyResult r;
    r.model = PolicyModel::LEC;
    r.lot_size = eoq(p);
    r.reorder_point = eoq_reorder_point(daily_rate, p.lead_time_days);
    r.breakdown = cost_breakdown(r.lot_size, p);
    r.predicted_annual_cost = r.breakdown.operating();
    return r;
}

/// Lot from the shortage-corrected formula; predicted cost is the plain
/// holding + ordering model evaluated at that lot (no shortage term).
template <class Model = NormalLeadTime>
PolicyResult qr_policy(const CostParams& p, const LeadTimeDemand& ltd, double service_level, const Model& model = {}) {
    p.validate();
    PolicyResult r;
    r.model = PolicyModel::QR;
    r.lot_size = qr_lot(p);
    r.reorder_point = qr_reorder_point(ltd, service_level, model);
    r.service_level = service_level;
    r.breakdown = cost_breakdown(r.lot_size, p);
    r.predicted_annual_cost = r.breakdown.operating();
    return r;
}

struct ComparisonRow {
    PolicyResult policy;
    double savings = 0;  ///< historical - predicted
};

struct PolicyComparison {
    double historical_cost = 0;
    std::vector<ComparisonRow> rows;
    /// Real holding/ordering costs do not fall linearly with stock, so the
    /// savings are an upper estimate. Always set; carried into reports.
    bool savings_upper_bound = true;
};

inline PolicyComparison compare_policies(const PolicyResult& lec, const PolicyResult& qr, double historical) {
    PolicyComparison cmp;
    cmp.historical_cost = historical;
    for (const auto* r : {&lec, &qr}) cmp.rows.push_back({*r, historical - r->predicted_annual_cost});
    return cmp;
}

/// Cost-vs-lot-size series over [q_min, q_max] in `steps` equal intervals.
inline std::vector<CostBreakdown> cost_curve(const CostParams& p, double q_min, double q_max, int steps) {
    detail::require(q_min > 0 && q_max >= q_min && steps >= 1, ErrorKind::Domain, "invalid cost-curve range");
    std::vector<CostBreakdown> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) out.push_back(cost_breakdown(q_min + (q_max - q_min) * i / steps, p));
    return out;
}

/// Rounds to the nearest multiple of `step` for display; step <= 0 disables.
inline double round_to(double value, double step) {
    if (step <= 0) return value;
    return std::round(value / step) * step;
}

}  // namespace stocklot
