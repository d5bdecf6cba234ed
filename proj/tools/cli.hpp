#pragma once

// stocklot command-line front end. Kept in a header so the test suite can
// drive it in-process.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "stocklot/stocklot.hpp"

namespace stocklot::cli {

enum ExitCode : int { Ok = 0, InputError = 1, MissingData = 2, InvariantViolation = 3 };

struct Options {
    std::string command;
    std::string ledger_path;
    int year = 0;
    std::string config_path;
    std::string item;
    std::string out_dir = ".";
    bool json_only = false;
    bool csv_only = false;
    std::string thresholds;
    std::optional<double> service_level;
    bool no_round = false;
    // simulate
    std::string policy = "lec";
    std::optional<double> lot;
    std::optional<double> reorder;
    std::optional<double> initial_level;
    bool trace = false;
};

/// Files produced by a command; written only after the whole command succeeds.
struct Outputs {
    std::vector<std::pair<std::string, std::string>> files;  // name, content
    bool want_json = true;
    bool want_csv = true;

    void json(const std::string& name, const io::Json& j) {
        if (want_json) files.emplace_back(name, j.dump(2) + "\n");
    }
    void csv(const std::string& name, std::string content) {
        if (want_csv) files.emplace_back(name, std::move(content));
    }
};

namespace detail {

inline std::string slug(std::string_view id) {
    std::string s;
    for (unsigned char c : id) {
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c >= 0x80 || c == '-')
            s += static_cast<char>(c);
        else if (c >= 'A' && c <= 'Z')
            s += static_cast<char>(c - 'A' + 'a');
        else
            s += '_';
    }
    return s;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Input, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_outputs(const std::string& dir, const Outputs& out) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::pair<fs::path, fs::path>> staged;
    for (const auto& [name, content] : out.files) {
        const fs::path final_path = fs::path(dir) / name;
        fs::path tmp = final_path;
        tmp += ".tmp";
        std::ofstream f(tmp, std::ios::binary);
        f << content;
        if (!f) {
            for (const auto& s : staged) fs::remove(s.first);
            fs::remove(tmp);
            throw Error(ErrorKind::Input, "cannot write '" + final_path.string() + "'");
        }
        staged.emplace_back(tmp, final_path);
    }
    for (const auto& [tmp, final_path] : staged) fs::rename(tmp, final_path);
}

}  // namespace detail

/// Loaded inputs plus every setting resolved from config and flags.
class Session {
public:
    explicit Session(const Options& o) : opt_(o) {
        if (!o.config_path.empty()) cfg_ = KeyValueConfig::load(o.config_path);
        if (!o.thresholds.empty()) cfg_.set("thresholds", o.thresholds);
        if (o.service_level) cfg_.set("service_level", std::to_string(*o.service_level));

        FormatConfig fmt;
        if (const auto d = cfg_.get("ledger.delimiter")) fmt.delimiter = d->empty() ? ';' : (*d == "tab" ? '\t' : (*d)[0]);
        if (const auto d = cfg_.get("ledger.decimal")) fmt.decimal_separator = d->empty() ? ',' : (*d)[0];
        if (const auto d = cfg_.get("ledger.date_format")) fmt.date_format = *d == "iso" ? DateFormat::Iso : DateFormat::DayMonthYear;
        if (const auto h = cfg_.get("ledger.header"))
            fmt.header = *h == "yes" ? HeaderMode::Present : (*h == "no" ? HeaderMode::Absent : HeaderMode::Auto);
        ledger_ = parse_ledger(detail::read_file(o.ledger_path), fmt);

        basis_ = cfg_.get("unit_basis").value_or("units") == "kg" ? UnitBasis::Kg : UnitBasis::Units;
        year_days_ = cfg_.get_int("year_days").value_or(365);
        round_step_ = o.no_round ? 0.0 : cfg_.get_double("round_to").value_or(100.0);
        year_ = o.year;
        const auto p = ledger_.period();
        if (p && (year_ < year_of(p->first) || year_ > year_of(p->last)))
            throw Error(ErrorKind::Input, "year " + std::to_string(year_) + " lies outside the ledger period " +
                                              to_iso(p->first) + ".." + to_iso(p->last));
    }

    const MovementLedger& ledger() const { return ledger_; }
    const KeyValueConfig& config() const { return cfg_; }
    int year() const { return year_; }
    DateRange year_range() const { return DateRange::calendar_year(year_); }
    UnitBasis basis() const { return basis_; }
    io::DisplayOptions display() const { return {round_step_}; }

    std::string item() const {
        if (opt_.item.empty()) throw Error(ErrorKind::MissingData, "--item is required for '" + opt_.command + "'");
        const auto id = ledger_.find_item(opt_.item);
        if (!id) throw Error(ErrorKind::MissingData, "unknown item '" + opt_.item + "'");
        return *id;
    }

    AbcThresholds thresholds() const {
        AbcThresholds t;
        if (const auto pr = cfg_.get_pair("thresholds")) t = {pr->first, pr->second};
        t.validate();
        return t;
    }

    double service_level() const { return cfg_.get_double("service_level").value_or(0.75); }

    StockTimeline timeline(const std::string& id) const {
        return stock_timeline(ledger_, id, year_range(), cfg_.item_double(id, "initial_level"), basis_);
    }

    DemandStats demand(const std::string& id) const { return demand_stats(ledger_, id, year_, {basis_, year_days_}); }

    /// Cost parameters: per-item keys, then global keys, then unit costs
    /// derived from aggregate expenses over every item in the year.
    CostParams cost_params(const std::string& id, bool need_shortage) const {
        CostParams p;
        p.annual_demand = cfg_.item_double(id, "annual_demand").value_or(demand(id).annual_demand);
        p.unit_price = cfg_.item_double(id, "unit_price").value_or(cfg_.price(id).value_or(0.0));
        p.lead_time_days = static_cast<int>(cfg_.item_double(id, "lead_time_days").value_or(0.0));
        p.shortage_cost = cfg_.item_double(id, "shortage_cost");

        auto cm = cfg_.item_double(id, "holding_cost");
        auto cp = cfg_.item_double(id, "ordering_cost");
        if ((!cm || !cp) && cfg_.contains("aggregate.storage_expenses") && cfg_.contains("aggregate.order_expenses")) {
            const auto u = unit_costs(aggregate_expenses(), year_days_);
            if (!cm) cm = u.holding_per_unit_year;
            if (!cp) cp = u.ordering_per_order;
        }
        if (!cm) throw Error(ErrorKind::MissingData, "missing holding_cost (or aggregate.* expenses)");
        if (!cp) throw Error(ErrorKind::MissingData, "missing ordering_cost (or aggregate.* expenses)");
        if (need_shortage && !p.shortage_cost) throw Error(ErrorKind::MissingData, "missing shortage_cost for (Q,R)");
        p.holding_cost = *cm;
        p.ordering_cost = *cp;
        if (p.annual_demand <= 0) throw Error(ErrorKind::MissingData, "zero annual demand for '" + id + "'");
        p.validate();
        return p;
    }

    AggregateExpenses aggregate_expenses() const {
        AggregateExpenses e;
        e.storage_expenses = *cfg_.get_double("aggregate.storage_expenses");
        e.order_expenses = *cfg_.get_double("aggregate.order_expenses");
        for (const auto& id : ledger_.items()) {
            e.stock_area += integrated_stock_area(timeline(id));
            e.orders += order_count(ledger_, id, year_range());
        }
        return e;
    }

    double historical(const std::string& id, const CostParams& p) const {
        const double avg = cfg_.item_double(id, "historical.avg_inventory").value_or(average_inventory(timeline(id)));
        const long orders = static_cast<long>(
            cfg_.item_double(id, "historical.orders").value_or(static_cast<double>(order_count(ledger_, id, year_range()))));
        return historical_cost(avg, orders, p.holding_cost, p.ordering_cost);
    }

    LeadTimeDemand lead_time(const std::string& id, int lead_days) const {
        const auto mu = cfg_.item_double(id, "lead_time.mu_star");
        const auto var = cfg_.item_double(id, "lead_time.sigma2_star");
        if (mu && var) return {lead_days, *mu, *var, 0};
        return lead_time_demand(ledger_, id, year_, std::max(lead_days, 1), basis_);
    }

    PolicyResult lec(const CostParams& p) const { return lec_policy(p, p.annual_demand / year_days_); }

    PolicyResult qr(const std::string& id, const CostParams& p) const {
        return qr_policy(p, lead_time(id, p.lead_time_days), service_level());
    }

    std::vector<CostBreakdown> curve(const CostParams& p) const {
        const int n = cfg_.get_int("cost_curve.points").value_or(60);
        const double q = eoq(p);
        return cost_curve(p, 0.1 * q, 3.0 * q, n);
    }

private:
    Options opt_;
    KeyValueConfig cfg_;
    MovementLedger ledger_;
    UnitBasis basis_ = UnitBasis::Units;
    int year_ = 0;
    int year_days_ = 365;
    double round_step_ = 100;
};

// ---------------------------------------------------------------------------
// Commands

inline void cmd_abc(const Session& s, Outputs& out, std::ostream& log) {
    std::vector<ItemDemandPrice> items;
    std::vector<std::string> missing;
    for (const auto& id : s.ledger().items()) {
        const double d = s.demand(id).annual_demand;
        const auto price = s.config().price(id);
        if (!price && d > 0) missing.push_back(id);
        items.push_back({id, d, price.value_or(0.0)});
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw Error(ErrorKind::MissingData, "missing prices for: " + list);
    }
    auto ranking = monetary_ranking(items);
    const auto curve = abc_curve_points(ranking);
    const auto report = classify_abc(std::move(ranking), s.thresholds());

    out.csv("abc.csv", io::abc_csv(report));
    out.json("abc.json", io::to_json(report));
    out.csv("abc_curve.csv", io::curve_points_csv(curve));
    log << "ABC: " << report.entries.size() << " items, total value " << io::fixed(report.total_value, 2) << " (A "
        << report.count(AbcClass::A) << ", B " << report.count(AbcClass::B) << ", C " << report.count(AbcClass::C) << ")\n";
}

inline void cmd_analyze(const Session& s, Outputs& out, std::ostream& log, std::ostream& err) {
    const auto id = s.item();
    const auto tl = s.timeline(id);
    const auto stats = s.demand(id);
    const auto curve = consumption_curve(s.ledger(), id, s.year(), s.basis());
    PatternConfig pc;
    pc.jit_dwell_days = s.config().item_double(id, "pattern.jit_dwell_days").value_or(pc.jit_dwell_days);
    pc.pathology_factor = s.config().item_double(id, "pattern.pathology_factor").value_or(pc.pathology_factor);
    const auto pattern = detect_pattern(tl, pc);

    io::Json j;
    j["item"] = id;
    j["year"] = s.year();
    j["demand"] = io::to_json(stats);
    j["average_inventory"] = average_inventory(tl);
    j["stock_area"] = integrated_stock_area(tl);
    j["orders"] = order_count(s.ledger(), id, s.year_range());
    const double dwell = mean_dwell_days(tl);
    j["mean_dwell_days"] = std::isfinite(dwell) ? io::Json(dwell) : io::Json(nullptr);
    j["consumption_start_total"] = curve.start_total;
    if (curve.start_total > 0 && curve.points.size() >= 2)
        j["constancy_metric"] = constancy_metric(curve);
    else
        j["constancy_metric"] = nullptr;
    j["pattern"] = to_string(pattern);
    std::vector<std::string> warnings = tl.warnings;
    warnings.insert(warnings.end(), stats.warnings.begin(), stats.warnings.end());
    j["warnings"] = warnings;

    const auto base = detail::slug(id);
    out.json(base + "_analysis.json", j);
    out.csv(base + "_timeline.csv", io::timeline_csv(tl));
    out.csv(base + "_consumption.csv", io::consumption_csv(curve));

    for (const auto& w : warnings) err << "warning: " << w << "\n";
    log << id << ": D=" << io::fixed(stats.annual_demand, 2) << " rate=" << io::fixed(stats.daily_rate, 2)
        << "/day pattern=" << to_string(pattern) << "\n";
}

inline void cmd_policy(const Session& s, Outputs& out, std::ostream& log, bool want_lec, bool want_qr) {
    const auto id = s.item();
    const auto params = s.cost_params(id, want_qr);
    const auto base = detail::slug(id);
    const double hist = s.historical(id, params);
    const auto disp = s.display();

    std::optional<PolicyResult> lec, qr;
    if (want_lec) lec = s.lec(params);
    if (want_qr) qr = s.qr(id, params);

    const auto params_json = io::Json{{"annual_demand", params.annual_demand},
                                      {"unit_price", params.unit_price},
                                      {"holding_cost", params.holding_cost},
                                      {"ordering_cost", params.ordering_cost},
                                      {"shortage_cost", params.shortage_cost ? io::Json(*params.shortage_cost) : io::Json(nullptr)},
                                      {"lead_time_days", params.lead_time_days}};

    if (lec && qr) {
        const auto cmp = compare_policies(*lec, *qr, hist);
        io::Json j{{"item", id}, {"year", s.year()}, {"parameters", params_json}};
        j["comparison"] = io::to_json(cmp, disp);
        out.json(base + "_compare.json", j);
        out.csv(base + "_compare.txt", io::comparison_table(cmp, disp));
        log << io::comparison_table(cmp, disp);
    } else {
        const auto& r = lec ? *lec : *qr;
        io::Json j{{"item", id}, {"year", s.year()}, {"parameters", params_json}};
        j["policy"] = io::to_json(r, disp);
        j["historical_cost"] = hist;
        j["savings"] = hist - r.predicted_annual_cost;
        j["savings_upper_bound"] = true;
        if (qr) {
            const auto ltd = s.lead_time(id, params.lead_time_days);
            j["lead_time_demand"] = io::to_json(ltd);
            j["lead_time_model"] = "normal";
            j["z"] = normal_quantile(s.service_level());
        }
        out.json(base + (lec ? "_eoq.json" : "_qr.json"), j);
        log << to_string(r.model) << " " << id << ": lot " << io::fixed(round_to(r.lot_size, disp.round_step), 2)
            << ", reorder point " << io::fixed(round_to(r.reorder_point, disp.reorder_step()), 2) << ", annual cost "
            << io::fixed(r.predicted_annual_cost, 2) << ", historical " << io::fixed(hist, 2) << "\n";
    }
    out.csv(base + "_cost_curve.csv", io::cost_curve_csv(s.curve(params)));
}

inline void cmd_simulate(const Session& s, const Options& o, Outputs& out, std::ostream& log) {
    const auto id = s.item();
    PolicySpec spec;
    CostParams params;
    if (o.lot && o.reorder) {
        params.holding_cost = s.config().item_double(id, "holding_cost").value_or(0.0);
        params.ordering_cost = s.config().item_double(id, "ordering_cost").value_or(0.0);
        spec = {*o.lot, *o.reorder, static_cast<int>(s.config().item_double(id, "lead_time_days").value_or(0.0))};
    } else {
        params = s.cost_params(id, o.policy == "qr");
        const auto r = o.policy == "qr" ? s.qr(id, params) : s.lec(params);
        spec = {r.lot_size, r.reorder_point, params.lead_time_days};
    }
    const double initial = o.initial_level.value_or(s.config().item_double(id, "sim.initial_level").value_or(spec.lot_size));
    const auto demand = extract_daily_demand(s.ledger(), id, s.year(), s.basis());
    const auto rep = replay(demand, spec, params, initial, o.trace);

    io::Json j{{"item", id}, {"year", s.year()}};
    j["policy"] = {{"lot_size", spec.lot_size}, {"reorder_point", spec.reorder_point}, {"lead_time_days", spec.lead_time_days}};
    j["report"] = io::to_json(rep);
    const auto base = detail::slug(id);
    out.json(base + "_simulate.json", j);
    if (o.trace) out.csv(base + "_trace.csv", io::trace_csv(rep));
    log << "replay " << id << ": avg inventory " << io::fixed(rep.realized_avg_inventory, 2) << ", orders "
        << rep.orders_placed << ", stockout days " << rep.stockout_days << ", unmet " << io::fixed(rep.unmet_demand, 2)
        << ", cost " << io::fixed(rep.realized_cost, 2) << "\n";
}

inline int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::MissingData: return MissingData;
        case ErrorKind::Contract: return InvariantViolation;
        default: return InputError;
    }
}

/// Entry point. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& log, std::ostream& err) {
    CLI::App app{"stocklot - inventory lot-size and reorder-policy analysis", "stocklot"};
    app.require_subcommand(1);
    Options o;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--ledger", o.ledger_path, "movement ledger file")->required();
        sub->add_option("--year", o.year, "calendar year to analyse")->required();
        sub->add_option("--config", o.config_path, "key = value settings file");
        sub->add_option("--item", o.item, "item id");
        sub->add_option("--out", o.out_dir, "output directory");
        sub->add_flag("--json", o.json_only, "write JSON outputs only");
        sub->add_flag("--csv", o.csv_only, "write CSV/text outputs only");
        sub->add_option("--thresholds", o.thresholds, "ABC cuts 'a,b', e.g. 0.70,0.90");
        sub->add_option("--service-level", o.service_level, "(Q,R) no-stockout probability");
        sub->add_flag("--no-round", o.no_round, "report raw lot sizes and reorder points");
    };
    const std::pair<const char*, const char*> subs[] = {
        {"abc", "rank items by annual value into A/B/C bands"},
        {"analyze", "stock timeline, demand rate, consumption curve and movement pattern of one item"},
        {"eoq", "economic lot size and reorder point"},
        {"qr", "(Q,R) lot size and service-level reorder point"},
        {"compare", "both policies against the item's historical cost"}};
    for (const auto& [name, help] : subs) add_common(app.add_subcommand(name, help));
    auto* sim = app.add_subcommand("simulate", "replay a policy over the year's daily demand");
    add_common(sim);
    sim->add_option("--policy", o.policy, "lec or qr (ignored with --lot/--reorder)")->check(CLI::IsMember({"lec", "qr"}));
    sim->add_option("--lot", o.lot, "lot size Q");
    sim->add_option("--reorder", o.reorder, "reorder point R");
    sim->add_option("--initial-level", o.initial_level, "opening stock (default: Q)");
    sim->add_flag("--trace", o.trace, "write the per-day trace CSV");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        log << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    }
    o.command = app.get_subcommands().front()->get_name();

    try {
        if (o.service_level && !(*o.service_level > 0 && *o.service_level < 1))
            throw Error(ErrorKind::Input, "--service-level must lie in (0,1)");
        if (o.json_only && o.csv_only) throw Error(ErrorKind::Input, "--json and --csv are exclusive");
        if (!o.thresholds.empty()) {
            const auto [a, b] = KeyValueConfig::parse_pair(o.thresholds, "--thresholds");
            AbcThresholds{a, b}.validate();
        }
        const Session s(o);
        for (const auto& w : s.ledger().warnings()) err << "warning: " << w << "\n";

        Outputs out;
        out.want_json = !o.csv_only;
        out.want_csv = !o.json_only;
        if (o.command == "abc") cmd_abc(s, out, log);
        else if (o.command == "analyze") cmd_analyze(s, out, log, err);
        else if (o.command == "eoq") cmd_policy(s, out, log, true, false);
        else if (o.command == "qr") cmd_policy(s, out, log, false, true);
        else if (o.command == "compare") cmd_policy(s, out, log, true, true);
        else cmd_simulate(s, o, out, log);
        detail::write_outputs(o.out_dir, out);
        return Ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return InvariantViolation;
    }
}

}  // namespace stocklot::cli
