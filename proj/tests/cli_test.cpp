#include <gtest/gtest.h>

#include <filesystem>

#include "cli.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using stocklot::cli::run;

namespace {

struct CliRun {
    int code = -1;
    std::string out, err;
};

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("stocklot_cli_") + info->name());
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    CliRun cli(std::vector<std::string> args, const fs::path& out_dir = {}) {
        args.push_back("--out");
        args.push_back((out_dir.empty() ? dir_ : out_dir).string());
        std::ostringstream o, e;
        CliRun r;
        r.code = run(args, o, e);
        r.out = o.str();
        r.err = e.str();
        return r;
    }

    std::string read(const std::string& name) const { return stocklot::cli::detail::read_file((dir_ / name).string()); }
    stocklot::io::Json json(const std::string& name) const { return stocklot::io::Json::parse(read(name)); }

    std::string write_cfg(const std::string& text) {
        fs::create_directories(dir_.parent_path());
        const auto p = dir_.string() + ".cfg";
        std::ofstream(p) << text;
        return p;
    }

    fs::path dir_;
};

const std::string kBeta = oracle::fixture_path("beta_2016.csv");
const std::string kBetaCfg = oracle::fixture_path("beta.cfg");

}  // namespace

TEST_F(CliTest, AbcOnFiftyItemLedger) {
    const auto r = cli({"abc", "--ledger", oracle::fixture_path("abc_50_items_2011.csv"), "--year", "2011", "--config",
                        oracle::fixture_path("abc_50_prices.cfg")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto csv = read("abc.csv");
    const auto first_row = csv.substr(csv.find('\n') + 1, csv.find('\n', csv.find('\n') + 1) - csv.find('\n') - 1);
    EXPECT_EQ(first_row, "Item 1,12000.00,10.00,120000.00,3.00%,3.00%,A");
    EXPECT_NE(csv.find("Item 3,10000.00,9.00,90000.00,2.25%,7.75%,A"), std::string::npos);
    const auto j = json("abc.json");
    EXPECT_DOUBLE_EQ(j["total_value"].get<double>(), 4000000.0);
    EXPECT_TRUE(fs::exists(dir_ / "abc_curve.csv"));
}

TEST_F(CliTest, AbcThresholdFlagOverridesConfig) {
    const auto args = std::vector<std::string>{"abc", "--ledger", oracle::fixture_path("abc_50_items_2011.csv"), "--year", "2011",
                                               "--config", oracle::fixture_path("abc_50_prices.cfg"), "--json"};
    auto a = args;
    ASSERT_EQ(cli(a).code, 0);
    const auto wide = json("abc.json")["counts"]["A"].get<int>();
    auto b = args;
    b.insert(b.end(), {"--thresholds", "0.50,0.90"});
    ASSERT_EQ(cli(b).code, 0);
    EXPECT_LT(json("abc.json")["counts"]["A"].get<int>(), wide);
    EXPECT_FALSE(fs::exists(dir_ / "abc.csv"));
    auto bad = args;
    bad.insert(bad.end(), {"--thresholds", "0.9,0.8"});
    EXPECT_EQ(cli(bad).code, 1);
}

TEST_F(CliTest, AbcMissingPriceIsMissingData) {
    const auto r = cli({"abc", "--ledger", kBeta, "--year", "2016"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("missing prices for: item β"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir_));
}

TEST_F(CliTest, EmptyLedgerIsInputError) {
    const auto cfg = write_cfg("");
    std::ofstream(dir_.string() + ".csv") << "";
    const auto r = cli({"abc", "--ledger", dir_.string() + ".csv", "--year", "2011", "--config", cfg});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("empty ledger"), std::string::npos);
    fs::remove(dir_.string() + ".csv");
    fs::remove(cfg);
}

TEST_F(CliTest, BadArgumentsAreInputErrors) {
    EXPECT_EQ(cli({"abc", "--year", "2011"}).code, 1);
    EXPECT_EQ(cli({"frobnicate"}).code, 1);
    EXPECT_EQ(cli({"abc", "--ledger", "/nonexistent.csv", "--year", "2011"}).code, 1);
    EXPECT_EQ(cli({"analyze", "--ledger", kBeta, "--year", "2019", "--item", "item β"}).code, 1);
    EXPECT_EQ(cli({"qr", "--ledger", kBeta, "--year", "2016", "--item", "item β", "--config", kBetaCfg, "--service-level",
                   "1.5"})
                  .code,
              1);
}

TEST_F(CliTest, AnalyzeCaseStudyItem) {
    const auto r = cli({"analyze", "--ledger", kBeta, "--year", "2016", "--item", "ITEM β"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json("item_β_analysis.json");
    EXPECT_DOUBLE_EQ(j["demand"]["annual_demand"].get<double>(), 25550.0);
    EXPECT_DOUBLE_EQ(j["demand"]["daily_rate"].get<double>(), 70.0);
    EXPECT_EQ(j["orders"].get<long>(), 24);
    EXPECT_NEAR(j["average_inventory"].get<double>(), 2580, 1.0);
    EXPECT_TRUE(fs::exists(dir_ / "item_β_timeline.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "item_β_consumption.csv"));
}

TEST_F(CliTest, AnalyzeFlagsJustInTime) {
    const auto cfg = oracle::fixture_path("iso.cfg");
    const auto led = oracle::fixture_path("jit_2011.csv");
    ASSERT_EQ(cli({"analyze", "--ledger", led, "--year", "2011", "--item", "fast", "--config", cfg}).code, 0);
    EXPECT_EQ(json("fast_analysis.json")["pattern"], "JustInTime");

    const auto r = cli({"analyze", "--ledger", led, "--year", "2011", "--item", "idle", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("zero demand"), std::string::npos);
    const auto j = json("idle_analysis.json");
    EXPECT_EQ(j["demand"]["annual_demand"].get<double>(), 0.0);
    EXPECT_TRUE(j["constancy_metric"].is_null());
}

TEST_F(CliTest, UnknownItemIsMissingData) {
    const auto r = cli({"analyze", "--ledger", kBeta, "--year", "2016", "--item", "item Z"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("unknown item"), std::string::npos);
    EXPECT_EQ(cli({"eoq", "--ledger", kBeta, "--year", "2016", "--config", kBetaCfg}).code, 2);
}

TEST_F(CliTest, EoqForCaseStudyItem) {
    const auto r = cli({"eoq", "--ledger", kBeta, "--year", "2016", "--item", "item β", "--config", kBetaCfg});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json("item_β_eoq.json");
    EXPECT_NEAR(j["policy"]["lot_size"].get<double>(), 1598.44, 0.005);
    EXPECT_EQ(j["policy"]["lot_size_display"].get<double>(), 1600);
    EXPECT_DOUBLE_EQ(j["policy"]["reorder_point"].get<double>(), 980.0);
    EXPECT_NEAR(j["savings"].get<double>(), 2180, 2);
    EXPECT_TRUE(fs::exists(dir_ / "item_β_cost_curve.csv"));
}

TEST_F(CliTest, QrAndCompareForCaseStudyItem) {
    ASSERT_EQ(cli({"qr", "--ledger", kBeta, "--year", "2016", "--item", "item β", "--config", kBetaCfg}).code, 0);
    const auto q = json("item_β_qr.json");
    EXPECT_EQ(q["policy"]["lot_size_display"].get<double>(), 1800);
    EXPECT_NEAR(q["policy"]["reorder_point"].get<double>(), 1468.2, 0.5);
    EXPECT_NEAR(q["z"].get<double>(), 0.6744898, 1e-6);

    const auto r = cli({"compare", "--ledger", kBeta, "--year", "2016", "--item", "item β", "--config", kBetaCfg});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto c = json("item_β_compare.json")["comparison"];
    EXPECT_TRUE(c["savings_upper_bound"].get<bool>());
    EXPECT_EQ(c["policies"][0]["model"], "LEC");
    EXPECT_EQ(c["policies"][1]["model"], "(Q,R)");
    EXPECT_NE(read("item_β_compare.txt").find("upper estimate"), std::string::npos);
    EXPECT_NE(r.out.find("LEC"), std::string::npos);
}

TEST_F(CliTest, NoRoundReportsRawValues) {
    ASSERT_EQ(cli({"compare", "--ledger", kBeta, "--year", "2016", "--item", "item β", "--config", kBetaCfg, "--no-round"})
                  .code,
              0);
    const auto c = json("item_β_compare.json")["comparison"]["policies"];
    EXPECT_NEAR(c[0]["lot_size_display"].get<double>(), 1598.44, 0.005);
    EXPECT_NEAR(c[1]["lot_size_display"].get<double>(), 1787.11, 0.005);
}

TEST_F(CliTest, MissingShortageCostIsMissingDataAndWritesNothing) {
    const auto cfg = write_cfg("holding_cost = 1\nordering_cost = 50\nlead_time_days = 14\n");
    const auto r = cli({"compare", "--ledger", kBeta, "--year", "2016", "--item", "item β", "--config", cfg});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("shortage_cost"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir_));
    EXPECT_EQ(cli({"eoq", "--ledger", kBeta, "--year", "2016", "--item", "item β", "--config", cfg}).code, 0);
    fs::remove(cfg);
}

TEST_F(CliTest, CostsFromAggregateExpenses) {
    // 1 per unit-day over the item's area, 50 per order
    const auto cfg = write_cfg("aggregate.storage_expenses = 941558.65\naggregate.order_expenses = 1200\nlead_time_days = 14\n");
    const auto r = cli({"eoq", "--ledger", kBeta, "--year", "2016", "--item", "item β", "--config", cfg, "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto p = json("item_β_eoq.json")["parameters"];
    EXPECT_DOUBLE_EQ(p["ordering_cost"].get<double>(), 50.0);
    EXPECT_GT(p["holding_cost"].get<double>(), 0.0);
    fs::remove(cfg);
}

TEST_F(CliTest, SimulateLecPolicy) {
    const auto r = cli({"simulate", "--ledger", kBeta, "--year", "2016", "--item", "item β", "--config", kBetaCfg, "--trace"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json("item_β_simulate.json");
    EXPECT_NEAR(j["policy"]["lot_size"].get<double>(), 1598.44, 0.005);
    EXPECT_DOUBLE_EQ(j["report"]["total_demand"].get<double>(), 25550.0);
    const double fill = j["report"]["fill_rate"].get<double>();
    EXPECT_GE(fill, 0.0);
    EXPECT_LE(fill, 1.0);
    EXPECT_TRUE(fs::exists(dir_ / "item_β_trace.csv"));
}

TEST_F(CliTest, SimulateExplicitPolicy) {
    const auto r = cli({"simulate", "--ledger", kBeta, "--year", "2016", "--item", "item β", "--config", kBetaCfg, "--lot",
                        "1600", "--reorder", "3000", "--initial-level", "3000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json("item_β_simulate.json");
    EXPECT_EQ(j["policy"]["reorder_point"].get<double>(), 3000);
    EXPECT_EQ(j["report"]["initial_level"].get<double>(), 3000);
}

TEST_F(CliTest, OutputIsByteIdenticalAcrossRuns) {
    const std::vector<std::string> args{"compare", "--ledger", kBeta, "--year", "2016", "--item", "item β", "--config", kBetaCfg};
    ASSERT_EQ(cli(args).code, 0);
    const auto first = read("item_β_compare.json");
    const auto curve = read("item_β_cost_curve.csv");
    ASSERT_EQ(cli(args).code, 0);
    EXPECT_EQ(read("item_β_compare.json"), first);
    EXPECT_EQ(read("item_β_cost_curve.csv"), curve);
}
