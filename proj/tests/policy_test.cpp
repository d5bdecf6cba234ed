#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "stocklot/policy.hpp"

using namespace stocklot;

namespace {

CostParams beta_params() {
    CostParams p;
    p.annual_demand = 25550;
    p.holding_cost = 1;
    p.ordering_cost = 50;
    p.shortage_cost = 4;
    p.lead_time_days = 14;
    return p;
}

CostParams params(double D, double Cm, double Cp, double P = 0) {
    CostParams p;
    p.annual_demand = D;
    p.holding_cost = Cm;
    p.ordering_cost = Cp;
    p.unit_price = P;
    return p;
}

}  // namespace

TEST(CostBreakdown, CaseStudyLotOf1600) {
    const auto c = cost_breakdown(1600, beta_params());
    EXPECT_DOUBLE_EQ(c.holding, 800.0);
    EXPECT_NEAR(c.ordering, 798.4375, 1e-12);
    EXPECT_NEAR(c.total, 1598.44, 0.005);
    EXPECT_DOUBLE_EQ(c.operating(), c.total);
}

TEST(CostBreakdown, BalancedByConstruction) {
    const double D = 400, Cm = 3;
    const auto c = cost_breakdown(D, params(D, Cm, Cm * D / 2));
    EXPECT_DOUBLE_EQ(c.holding, c.ordering);
}

TEST(CostBreakdown, WithAcquisition) {
    const auto c = cost_breakdown(100, params(1000, 2, 10, 3));
    EXPECT_DOUBLE_EQ(c.holding, 100);
    EXPECT_DOUBLE_EQ(c.ordering, 100);
    EXPECT_DOUBLE_EQ(c.acquisition, 3000);
    EXPECT_DOUBLE_EQ(c.total, 3200);
}

TEST(CostBreakdown, NonPositiveLotIsDomainError) {
    EXPECT_THROW(cost_breakdown(0, beta_params()), Error);
    EXPECT_THROW(cost_breakdown(-5, beta_params()), Error);
}

TEST(Eoq, Values) {
    EXPECT_NEAR(eoq(beta_params()), 1598.44, 0.005);
    EXPECT_DOUBLE_EQ(eoq(params(1, 1, 0.5)), 1.0);
    EXPECT_DOUBLE_EQ(eoq(params(1000, 2, 10)), 100.0);
    EXPECT_THROW(eoq(params(0, 1, 1)), Error);
    EXPECT_THROW(eoq(params(1, 0, 1)), Error);
    EXPECT_THROW(eoq(params(1, 1, -1)), Error);
}

TEST(Eoq, MatchesIntegerGridSearch) {
    const auto p = params(1000, 2, 10);
    const auto g = oracle::eoq_grid_min(1000, 10, 2, 1000);
    EXPECT_DOUBLE_EQ(g.q, 100.0);
    EXPECT_LE(cost_breakdown(eoq(p), p).total, g.cost);
}

TEST(EoqReorderPoint, Values) {
    EXPECT_DOUBLE_EQ(eoq_reorder_point(70, 14), 980.0);
    EXPECT_DOUBLE_EQ(eoq_reorder_point(0, 14), 0.0);
    EXPECT_NEAR(eoq_reorder_point(177.60, 5), 888.0, 1e-9);
    EXPECT_THROW(eoq_reorder_point(-1, 3), Error);
}

TEST(HistoricalCost, Values) {
    EXPECT_DOUBLE_EQ(historical_cost(2580, 24, 1, 50), 3780.0);
    EXPECT_DOUBLE_EQ(historical_cost(0, 0, 1, 50), 0.0);
    EXPECT_DOUBLE_EQ(historical_cost(800, 16, 1, 50), 1600.0);
}

TEST(QrLot, Values) {
    const auto p = beta_params();
    EXPECT_NEAR(qr_lot(p), 1787.11, 0.005);
    EXPECT_NEAR(qr_lot(p), eoq(p) * std::sqrt(1.25), 1e-9);

    auto huge = p;
    huge.shortage_cost = 1e12;
    EXPECT_NEAR(qr_lot(huge) / eoq(huge), 1.0, 1e-6);

    auto same = p;
    same.shortage_cost = p.holding_cost;
    EXPECT_NEAR(qr_lot(same), eoq(same) * std::sqrt(2.0), 1e-9);
}

TEST(QrLot, MissingShortageCost) {
    auto p = beta_params();
    p.shortage_cost.reset();
    try {
        qr_lot(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MissingData);
    }
    p.shortage_cost = 0;
    EXPECT_THROW(qr_lot(p), Error);
}

TEST(NormalQuantile, KnownValues) {
    EXPECT_EQ(normal_quantile(0.5), 0.0);
    EXPECT_NEAR(normal_quantile(0.75), 0.6744897501960817, 1e-10);
    EXPECT_NEAR(normal_quantile(0.75), oracle::quantile_bisect(0.75), 1e-10);
    EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-10);
    EXPECT_NEAR(normal_quantile(1e-6), oracle::quantile_bisect(1e-6), 1e-8);
    EXPECT_NEAR(normal_quantile(0.01), -normal_quantile(0.99), 1e-12);
}

TEST(NormalQuantile, DomainErrors) {
    EXPECT_THROW(normal_quantile(0.0), Error);
    EXPECT_THROW(normal_quantile(1.0), Error);
    EXPECT_THROW(normal_quantile(-0.2), Error);
    EXPECT_THROW(normal_quantile(std::nan("")), Error);
}

TEST(QrReorderPoint, Values) {
    const LeadTimeDemand table{14, 981.75, 520143.86, 0};
    EXPECT_DOUBLE_EQ(qr_reorder_point({14, 123.0, 999.0, 0}, 0.5), 123.0);
    EXPECT_NEAR(qr_reorder_point(table, 0.75), 1468.2, 0.05);
    EXPECT_DOUBLE_EQ(qr_reorder_point({14, 980.0, 0.0, 0}, 0.9), 980.0);
    EXPECT_THROW(qr_reorder_point(table, 1.0), Error);
    EXPECT_THROW(qr_reorder_point(table, 0.0), Error);
}

TEST(QrReorderPoint, UniformModelIsSwappable) {
    const LeadTimeDemand ltd{14, 100.0, 300.0, 0};  // half-width sqrt(900) = 30
    EXPECT_DOUBLE_EQ(qr_reorder_point(ltd, 0.75, UniformLeadTime{}), 115.0);
    EXPECT_DOUBLE_EQ(qr_reorder_point(ltd, 0.5, UniformLeadTime{}), 100.0);
}

TEST(UnitCosts, Values) {
    const auto u = unit_costs({36500, 1200, 36500, 24});
    EXPECT_DOUBLE_EQ(u.holding_per_unit_day, 1.0);
    EXPECT_DOUBLE_EQ(u.holding_per_unit_year, 365.0);
    EXPECT_DOUBLE_EQ(u.ordering_per_order, 50.0);
    try {
        unit_costs({100, 100, 10, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MissingData);
    }
    EXPECT_THROW(unit_costs({100, 100, 0, 5}), Error);
}

TEST(ComparePolicies, CaseStudyTable) {
    const auto p = beta_params();
    const auto lec = lec_policy(p, 70);
    const auto qr = qr_policy(p, {14, 981.75, 520143.86, 0}, 0.75);
    const auto cmp = compare_policies(lec, qr, historical_cost(2580, 24, 1, 50));

    ASSERT_EQ(cmp.rows.size(), 2u);
    EXPECT_EQ(cmp.rows[0].policy.model, PolicyModel::LEC);
    EXPECT_DOUBLE_EQ(round_to(cmp.rows[0].policy.lot_size, 100), 1600);
    EXPECT_DOUBLE_EQ(cmp.rows[0].policy.reorder_point, 980);
    EXPECT_DOUBLE_EQ(round_to(cmp.rows[1].policy.lot_size, 100), 1800);
    EXPECT_NEAR(cmp.rows[1].policy.reorder_point, 1468.2, 0.05);
    EXPECT_NEAR(cmp.rows[0].savings, 2180, 2);
    EXPECT_TRUE(cmp.savings_upper_bound);
    EXPECT_EQ(cmp.rows[1].policy.service_level, 0.75);
}

TEST(ComparePolicies, SavingsAgainstRoundedLot) {
    const double predicted = cost_breakdown(1600, beta_params()).operating();
    EXPECT_NEAR(historical_cost(2580, 24, 1, 50) - predicted, 2180, 2);
}

TEST(ComparePolicies, IdenticalPoliciesGiveEqualRows) {
    const auto lec = lec_policy(beta_params(), 70);
    const auto cmp = compare_policies(lec, lec, 1000);
    EXPECT_EQ(cmp.rows[0].savings, cmp.rows[1].savings);
    EXPECT_EQ(cmp.rows[0].policy.lot_size, cmp.rows[1].policy.lot_size);
}

TEST(CostCurve, SpansRangeAndBottomsOutAtEoq) {
    const auto p = beta_params();
    const auto curve = cost_curve(p, 100, 4000, 390);
    ASSERT_EQ(curve.size(), 391u);
    EXPECT_DOUBLE_EQ(curve.front().lot_size, 100);
    EXPECT_DOUBLE_EQ(curve.back().lot_size, 4000);
    const auto best = std::min_element(curve.begin(), curve.end(),
                                       [](const auto& a, const auto& b) { return a.total < b.total; });
    EXPECT_NEAR(best->lot_size, eoq(p), 10.0);
    EXPECT_THROW(cost_curve(p, 0, 10, 5), Error);
}

TEST(RoundTo, Display) {
    EXPECT_DOUBLE_EQ(round_to(1598.44, 100), 1600);
    EXPECT_DOUBLE_EQ(round_to(1787.12, 100), 1800);
    EXPECT_DOUBLE_EQ(round_to(1787.12, 0), 1787.12);
}
