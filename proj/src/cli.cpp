#include "airel/cli.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "airel/alt.hpp"
#include "airel/core.hpp"
#include "airel/drift.hpp"
#include "airel/fmea.hpp"
#include "airel/ingest.hpp"
#include "airel/life.hpp"
#include "airel/metrics.hpp"
#include "airel/report.hpp"
#include "airel/resilience.hpp"
#include "airel/sim.hpp"

namespace airel::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error(Errc::io_error, "failed writing '" + path + "'");
}

// Plain list of positive reals, one per line; `#` comments and blanks skipped.
std::vector<double> parse_duration_lines(const std::string& text) {
    std::vector<double> values;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        std::string t = line.substr(b, e - b + 1);
        if (t[0] == '#' || t == "duration") continue;
        try {
            std::size_t used = 0;
            values.push_back(std::stod(t, &used));
            if (used != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
            throw Error(Errc::malformed_row,
                        "line " + std::to_string(line_no) + ": not a number: " + t);
        }
    }
    if (values.empty()) throw Error(Errc::empty_input, "no durations in input");
    return values;
}

// CSV with header `stress,duration`, grouped by stress level.
std::vector<alt::StressGroup> parse_stress_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::map<double, std::vector<double>> groups;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "stress,duration")
                throw Error(Errc::malformed_row, "stress CSV header must be 'stress,duration'");
            header = true;
            continue;
        }
        auto f = ingest::split_csv_row(line);
        if (f.size() != 2)
            throw Error(Errc::malformed_row, "line " + std::to_string(line_no) + ": expected 2 fields");
        try {
            groups[std::stod(f[0])].push_back(std::stod(f[1]));
        } catch (const std::exception&) {
            throw Error(Errc::malformed_row, "line " + std::to_string(line_no) + ": not numbers");
        }
    }
    if (groups.empty()) throw Error(Errc::empty_input, "no stress groups in input");
    std::vector<alt::StressGroup> out;
    for (auto& [stress, durations] : groups) out.push_back({stress, std::move(durations)});
    return out;
}

struct HeatConfig {
    report::MtbfHeat mtbf;
    fmea::HeatThresholds rpn;
};

HeatConfig parse_heat_config(const std::string& text) {
    HeatConfig heat;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        std::string t = line.substr(b, e - b + 1);
        if (t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::bad_config, "line " + std::to_string(line_no) + ": expected key=value");
        auto trim = [](std::string s) {
            std::size_t sb = s.find_first_not_of(" \t");
            std::size_t se = s.find_last_not_of(" \t");
            return sb == std::string::npos ? std::string() : s.substr(sb, se - sb + 1);
        };
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        double num;
        try {
            num = std::stod(value);
        } catch (const std::exception&) {
            throw Error(Errc::bad_config, "key '" + key + "' is not a number: " + value);
        }
        if (key == "heat.mtbf.green")
            heat.mtbf.green_min = num;
        else if (key == "heat.mtbf.red")
            heat.mtbf.red_max = num;
        else if (key == "heat.rpn.red")
            heat.rpn.rpn_red = static_cast<int>(num);
        else if (key == "heat.rpn.yellow")
            heat.rpn.rpn_yellow = static_cast<int>(num);
        else
            throw Error(Errc::bad_config, "unknown config key '" + key + "'");
    }
    return heat;
}

UtcSeconds parse_point_in_time(const std::string& text) { return parse_timestamp(text); }

report::Table metrics_component_table(const std::vector<metrics::GroupSummary>& summaries,
                                      const HeatConfig& heat) {
    report::Table t;
    t.name = "metrics_by_component";
    t.caption = "Failure metrics by component";
    t.columns = {"Component", "MTBF (days)", "MTTR (days)", "Failure Rate (per 100 days)"};
    t.formats = {report::ColumnFormat::text, report::ColumnFormat::days, report::ColumnFormat::days,
                 report::ColumnFormat::one_decimal};
    for (const auto& g : summaries) {
        std::vector<report::Cell> row;
        row.push_back(report::Cell::text(g.key));
        row.push_back(g.mtbf_days ? report::Cell::real(*g.mtbf_days) : report::Cell::none());
        row.push_back(report::Cell::real(g.mttr_days));
        row.push_back(report::Cell::real(g.failure_rate_per_100d));
        t.rows.push_back(std::move(row));
        t.heat.push_back(report::heat_for_mtbf(g.mtbf_days, heat.mtbf));
    }
    return t;
}

report::Table metrics_subsystem_table(const std::vector<metrics::GroupSummary>& summaries,
                                      const std::vector<metrics::SubsystemShare>& shares,
                                      const HeatConfig& heat) {
    report::Table t;
    t.name = "metrics_by_subsystem";
    t.caption = "Failure metrics by subsystem";
    t.columns = {"Subsystem", "Failures",    "Share (%)",
                 "MTBF (days)", "MTTR (days)", "Failure Rate (per 100 days)"};
    t.formats = {report::ColumnFormat::text,       report::ColumnFormat::integer,
                 report::ColumnFormat::one_decimal, report::ColumnFormat::days,
                 report::ColumnFormat::days,        report::ColumnFormat::one_decimal};
    for (const auto& g : summaries) {
        double share = 0;
        for (const auto& s : shares)
            if (subsystem_name(s.subsystem) == g.key) share = s.share_pct;
        std::vector<report::Cell> row;
        row.push_back(report::Cell::text(g.key));
        row.push_back(report::Cell::integer(static_cast<std::int64_t>(g.failures)));
        row.push_back(report::Cell::real(share));
        row.push_back(g.mtbf_days ? report::Cell::real(*g.mtbf_days) : report::Cell::none());
        row.push_back(report::Cell::real(g.mttr_days));
        row.push_back(report::Cell::real(g.failure_rate_per_100d));
        t.rows.push_back(std::move(row));
        t.heat.push_back(report::heat_for_mtbf(g.mtbf_days, heat.mtbf));
    }
    return t;
}

report::Table fmea_table(const std::vector<fmea::Entry>& entries, const HeatConfig& heat) {
    report::Table t;
    t.name = "fmea";
    t.caption = "Failure mode and effects analysis";
    t.columns = {"Failure Mode", "Root Cause", "Failure Events", "Impact Score", "RPN"};
    t.formats = {report::ColumnFormat::text, report::ColumnFormat::text,
                 report::ColumnFormat::integer, report::ColumnFormat::sig6,
                 report::ColumnFormat::integer};
    for (const auto& e : entries) {
        std::vector<report::Cell> row;
        row.push_back(report::Cell::text(e.failure_mode));
        row.push_back(report::Cell::text(e.root_cause));
        row.push_back(report::Cell::integer(static_cast<std::int64_t>(e.failure_events)));
        row.push_back(report::Cell::real(e.impact_score));
        row.push_back(report::Cell::integer(e.rpn));
        t.rows.push_back(std::move(row));
        t.heat.push_back(fmea::heat_tag(e, heat.rpn));
    }
    return t;
}

report::Table fmea_unscored_table(const std::vector<fmea::UnscoredGroup>& groups) {
    report::Table t;
    t.name = "fmea_unscored";
    t.caption = "Failure modes without scoring entries";
    t.columns = {"Failure Mode", "Root Cause", "Failure Events", "Downtime (hours)"};
    t.formats = {report::ColumnFormat::text, report::ColumnFormat::text,
                 report::ColumnFormat::integer, report::ColumnFormat::sig6};
    for (const auto& g : groups) {
        std::vector<report::Cell> row;
        row.push_back(report::Cell::text(g.failure_mode));
        row.push_back(report::Cell::text(g.root_cause));
        row.push_back(report::Cell::integer(static_cast<std::int64_t>(g.failure_events)));
        row.push_back(report::Cell::real(g.downtime_hours));
        t.rows.push_back(std::move(row));
        t.heat.push_back("");
    }
    return t;
}

report::Table kv_table(const std::string& name, const std::string& caption,
                       const std::vector<std::pair<std::string, report::Cell>>& rows) {
    report::Table t;
    t.name = name;
    t.caption = caption;
    t.columns = {"Quantity", "Value"};
    t.formats = {report::ColumnFormat::text, report::ColumnFormat::sig6};
    for (const auto& [k, v] : rows) t.rows.push_back({report::Cell::text(k), v});
    return t;
}

struct GlobalFlags {
    std::string format = "md";
    std::string out_path;
    std::string config_path;
    std::string generated_at;
    std::optional<std::uint64_t> seed;
    bool strict = false;
};

std::string now_utc() { return format_timestamp(static_cast<UtcSeconds>(std::time(nullptr))); }

void emit(const report::Report& rep, const GlobalFlags& flags, std::ostream& out) {
    std::string payload;
    if (flags.format == "md")
        payload = report::render_markdown(rep);
    else if (flags.format == "json")
        payload = report::render_json(rep);
    else if (flags.format == "csv")
        payload = report::render_csv(rep);
    else
        throw Error(Errc::bad_argument, "unknown format '" + flags.format + "'");
    if (flags.out_path.empty())
        out << payload;
    else
        write_file(flags.out_path, payload);
}

IncidentStore load_store(const std::string& path, const std::optional<std::string>& subsystem,
                         const std::string& component) {
    IncidentStore store = ingest::store_from_json(read_file(path));
    std::optional<Subsystem> sub;
    if (subsystem) {
        sub = subsystem_from_name(*subsystem);
        if (!sub) throw Error(Errc::unknown_subsystem, "unknown subsystem '" + *subsystem + "'");
    }
    if (sub || !component.empty()) store = filter_store(store, sub, component);
    return store;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reliability and resilience analytics for AI service incident data"};
    app.require_subcommand(1);

    GlobalFlags flags;
    std::uint64_t seed_value = 0;
    bool seed_given = false;
    app.add_option("--format", flags.format, "Output format: md, json, or csv")
        ->check(CLI::IsMember({"md", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", flags.out_path, "Write the payload to this file instead of stdout");
    app.add_option("--config", flags.config_path,
                   "key=value config file (falls back to $AIREL_CONFIG)");
    app.add_option("--generated-at", flags.generated_at,
                   "Timestamp recorded in report headers (default: current UTC time)");
    app.add_flag("--strict", flags.strict, "Escalate classification fallbacks to errors");
    auto* seed_opt = app.add_option("--seed", seed_value, "Seed override for simulation");

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "Validate an incident CSV into a store file");
    std::string in_input, in_mapping, in_wstart, in_wend;
    ingest_cmd->add_option("--input", in_input, "Incident CSV path")->required();
    ingest_cmd->add_option("--mapping", in_mapping, "Component-to-subsystem rule file");
    ingest_cmd->add_option("--window-start", in_wstart, "Observation window start")->required();
    ingest_cmd->add_option("--window-end", in_wend, "Observation window end")->required();

    // metrics
    auto* metrics_cmd = app.add_subcommand("metrics", "Failure metrics over a validated store");
    std::string m_store, m_group = "component", m_component;
    std::optional<std::string> m_subsystem;
    bool m_mean_gap = false, m_include_censored = false;
    metrics_cmd->add_option("--store", m_store, "Store JSON path")->required();
    metrics_cmd->add_option("--group", m_group, "Grouping key: component or subsystem")
        ->check(CLI::IsMember({"component", "subsystem"}));
    metrics_cmd->add_option("--subsystem", m_subsystem, "Keep only this subsystem");
    metrics_cmd->add_option("--component", m_component, "Keep only this component");
    metrics_cmd->add_flag("--mtbf-mean-gap", m_mean_gap,
                          "MTBF as the mean inter-failure gap instead of window/failures");
    metrics_cmd->add_flag("--include-censored", m_include_censored,
                          "Count open incidents (censored at the window end) into downtime");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "Fit a life distribution to duration samples");
    std::string f_input, f_family = "weibull";
    double f_alpha = 0.05;
    fit_cmd->add_option("--input", f_input, "Durations file, one value per line")->required();
    fit_cmd->add_option("--family", f_family, "exponential, weibull, normal, lognormal, gamma");
    fit_cmd->add_option("--alpha", f_alpha, "KS significance level")->capture_default_str();

    // hazard
    auto* hazard_cmd = app.add_subcommand("hazard", "Rolling failure rate with log trend");
    std::string h_store, h_component, h_plot;
    std::optional<std::string> h_subsystem;
    double h_window = 14, h_step = 1;
    hazard_cmd->add_option("--store", h_store, "Store JSON path")->required();
    hazard_cmd->add_option("--component", h_component, "Keep only this component");
    hazard_cmd->add_option("--subsystem", h_subsystem, "Keep only this subsystem");
    hazard_cmd->add_option("--window-days", h_window, "Rolling window length")->capture_default_str();
    hazard_cmd->add_option("--step-days", h_step, "Step between evaluation points")
        ->capture_default_str();
    hazard_cmd->add_option("--plot", h_plot, "Prefix for per-series CSV files and the SVG");

    // resilience
    auto* res_cmd = app.add_subcommand("resilience", "Episode extraction and resilience scoring");
    std::string r_series;
    double r_theta_f = 0.9, r_theta_r = 0.95, r_delta = 0.05, r_floor = 0.5, r_expedite = 0.25;
    std::optional<double> r_baseline;
    res_cmd->add_option("--series", r_series, "Performance CSV path")->required();
    res_cmd->add_option("--theta-f", r_theta_f, "Disruption threshold")->capture_default_str();
    res_cmd->add_option("--theta-r", r_theta_r, "Recovery threshold")->capture_default_str();
    res_cmd->add_option("--delta", r_delta, "Recovery class tolerance")->capture_default_str();
    res_cmd->add_option("--floor", r_floor, "Brittle/graceful floor fraction")->capture_default_str();
    res_cmd->add_option("--baseline", r_baseline, "Baseline override");
    res_cmd->add_option("--expedite-quantile", r_expedite, "Recovery-time quantile for the flag")
        ->capture_default_str();

    // fmea
    auto* fmea_cmd = app.add_subcommand("fmea", "Failure mode and effects analysis");
    std::string fm_store, fm_scoring, fm_component;
    std::optional<std::string> fm_subsystem;
    bool fm_include_censored = false;
    fmea_cmd->add_option("--store", fm_store, "Store JSON path")->required();
    fmea_cmd->add_option("--scoring", fm_scoring, "Scoring map CSV")->required();
    fmea_cmd->add_option("--component", fm_component, "Keep only this component");
    fmea_cmd->add_option("--subsystem", fm_subsystem, "Keep only this subsystem");
    fmea_cmd->add_flag("--include-censored", fm_include_censored,
                       "Count open incidents into downtime");

    // mttd
    auto* mttd_cmd = app.add_subcommand("mttd", "Distribution drift detection over a stream");
    std::string d_reference, d_stream;
    std::size_t d_window = 50;
    double d_alpha = 0.05;
    mttd_cmd->add_option("--reference", d_reference, "Reference window CSV (timestamp,value)")
        ->required();
    mttd_cmd->add_option("--stream", d_stream, "Stream CSV (timestamp,value)")->required();
    mttd_cmd->add_option("--window", d_window, "Sliding window length")->capture_default_str();
    mttd_cmd->add_option("--alpha", d_alpha, "Significance level")->capture_default_str();

    // alt
    auto* alt_cmd = app.add_subcommand("alt", "Accelerated life analysis across stress levels");
    std::string a_input;
    std::optional<double> a_stress, a_time;
    bool a_bayes = false;
    std::string a_grid_shape = "0.5:4:41", a_grid_scale = "50:200:41";
    alt_cmd->add_option("--input", a_input, "CSV with header stress,duration")->required();
    alt_cmd->add_option("--use-stress", a_stress, "Use-stress level for predictions");
    alt_cmd->add_option("--time", a_time, "Mission time for reliability predictions");
    alt_cmd->add_flag("--bayes", a_bayes, "Grid posterior over (shape, scale)");
    alt_cmd->add_option("--grid-beta", a_grid_shape, "Shape axis lo:hi:n")->capture_default_str();
    alt_cmd->add_option("--grid-eta", a_grid_scale, "Scale axis lo:hi:n")->capture_default_str();

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo failure/repair histories");
    std::string s_config, s_history;
    sim_cmd->add_option("--config", s_config, "key=value simulation config")->required();
    sim_cmd->add_option("--out", s_history, "Write the event history CSV here");

    // report
    auto* report_cmd = app.add_subcommand("report", "Combined reliability report for a store");
    std::string rp_store, rp_scoring;
    report_cmd->add_option("--store", rp_store, "Store JSON path")->required();
    report_cmd->add_option("--scoring", rp_scoring, "Scoring map CSV enables the FMEA section");

    // Global flags may appear before or after the subcommand name.
    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    std::vector<const char*> argv;
    argv.push_back("airel");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }
    if (seed_opt->count() > 0) seed_given = true;

    try {
        HeatConfig heat;
        std::string config_path = flags.config_path;
        if (config_path.empty()) {
            if (const char* env = std::getenv("AIREL_CONFIG")) config_path = env;
        }
        if (!config_path.empty()) heat = parse_heat_config(read_file(config_path));
        std::string generated_at = flags.generated_at.empty() ? now_utc() : flags.generated_at;

        if (app.got_subcommand(ingest_cmd)) {
            Window window{parse_point_in_time(in_wstart), parse_point_in_time(in_wend)};
            std::vector<ingest::MappingRule> rules;
            if (!in_mapping.empty()) rules = ingest::parse_mapping(read_file(in_mapping));
            IncidentStore store =
                ingest::parse_incident_csv(read_file(in_input), window, rules, flags.strict);
            std::string payload = ingest::store_to_json(store);
            if (flags.out_path.empty())
                out << payload;
            else
                write_file(flags.out_path, payload);
            err << "validated " << store.size() << " incident(s)\n";
            return 0;
        }

        if (app.got_subcommand(metrics_cmd)) {
            IncidentStore store = load_store(m_store, m_subsystem, m_component);
            metrics::SummarizeOptions opts;
            opts.group = m_group == "subsystem" ? metrics::GroupBy::subsystem
                                                : metrics::GroupBy::component;
            opts.mtbf_mean_gap = m_mean_gap;
            opts.downtime = m_include_censored ? DowntimePolicy::include_censored
                                               : DowntimePolicy::exclude_open;
            auto summaries = metrics::summarize(store, opts);
            report::Report rep;
            rep.title = "Failure metrics";
            rep.generated_at = generated_at;
            if (opts.group == metrics::GroupBy::subsystem)
                rep.tables.push_back(
                    metrics_subsystem_table(summaries, metrics::subsystem_counts(store), heat));
            else
                rep.tables.push_back(metrics_component_table(summaries, heat));
            emit(rep, flags, out);
            return 0;
        }

        if (app.got_subcommand(fit_cmd)) {
            auto durations = parse_duration_lines(read_file(f_input));
            life::LifeModel model = life::fit_mle(life::family_from_name(f_family), durations);
            std::vector<std::pair<std::string, report::Cell>> rows;
            rows.emplace_back("family", report::Cell::text(life::family_name(model.family)));
            const char* p1_name = "rate";
            const char* p2_name = "";
            switch (model.family) {
                case life::Family::exponential: break;
                case life::Family::weibull: p1_name = "shape"; p2_name = "scale"; break;
                case life::Family::normal: p1_name = "mean"; p2_name = "sd"; break;
                case life::Family::lognormal: p1_name = "log_mean"; p2_name = "log_sd"; break;
                case life::Family::gamma: p1_name = "shape"; p2_name = "rate"; break;
            }
            rows.emplace_back(p1_name, report::Cell::real(model.p1));
            if (*p2_name) rows.emplace_back(p2_name, report::Cell::real(model.p2));
            rows.emplace_back("log_likelihood", report::Cell::real(model.log_likelihood));
            if (durations.size() >= 5) {
                auto ks = life::ks_gof(model, durations, f_alpha);
                rows.emplace_back("ks_d", report::Cell::real(ks.d));
                rows.emplace_back("ks_alpha", report::Cell::real(ks.alpha));
                rows.emplace_back("ks_critical", report::Cell::real(ks.critical));
                rows.emplace_back("ks_pass", report::Cell::text(ks.pass ? "yes" : "no"));
            }
            report::Report rep;
            rep.title = "Life distribution fit";
            rep.generated_at = generated_at;
            rep.tables.push_back(kv_table("fit", "Maximum likelihood fit", rows));
            emit(rep, flags, out);
            return 0;
        }

        if (app.got_subcommand(hazard_cmd)) {
            IncidentStore store = load_store(h_store, h_subsystem, h_component);
            auto rolling = metrics::rolling_failure_rate(store, h_window, h_step);
            report::Report rep;
            rep.title = "Rolling failure rate";
            rep.generated_at = generated_at;
            rep.tables.push_back(kv_table(
                "trend", "Logarithmic trend rate = a + b ln(t)",
                {{"intercept_a", report::Cell::real(rolling.trend_intercept)},
                 {"slope_b", report::Cell::real(rolling.trend_slope)},
                 {"points", report::Cell::integer(static_cast<std::int64_t>(rolling.t_days.size()))}}));
            report::Series rate{"rolling_rate", rolling.t_days, rolling.rate_per_day};
            report::Series trend{"log_trend", rolling.t_days, {}};
            for (double t : rolling.t_days)
                trend.y.push_back(rolling.trend_intercept + rolling.trend_slope * std::log(t));
            rep.series.push_back(std::move(rate));
            rep.series.push_back(std::move(trend));
            if (!h_plot.empty()) report::export_plot_series(rep, h_plot);
            emit(rep, flags, out);
            return 0;
        }

        if (app.got_subcommand(res_cmd)) {
            PerformanceSeries series =
                ingest::parse_performance_csv(read_file(r_series), r_baseline);
            resilience::Options opts;
            opts.theta_f = r_theta_f;
            opts.theta_r = r_theta_r;
            opts.delta = r_delta;
            opts.floor_frac = r_floor;
            auto episodes = resilience::extract_episodes(series, opts);
            auto expedite = resilience::expedite_flags(episodes, r_expedite);

            report::Table t;
            t.name = "episodes";
            t.caption = "Disruption episodes";
            t.columns = {"Episode", "Incident", "Floor", "Recovered", "Degradation (s)",
                         "Recovery (s)", "F", "R", "Re", "Failure", "Recovery class", "Expedite"};
            t.formats = {report::ColumnFormat::integer, report::ColumnFormat::text,
                         report::ColumnFormat::text,    report::ColumnFormat::text,
                         report::ColumnFormat::sig6,    report::ColumnFormat::sig6,
                         report::ColumnFormat::sig6,    report::ColumnFormat::sig6,
                         report::ColumnFormat::sig6,    report::ColumnFormat::text,
                         report::ColumnFormat::text,    report::ColumnFormat::text};
            double re_sum = 0;
            for (std::size_t i = 0; i < episodes.size(); ++i) {
                const auto& ep = episodes[i];
                auto prof = resilience::profiles(series, ep);
                double lead = ep.t_incident - static_cast<double>(series.samples.front().t);
                double re = resilience::resilience_index(lead, ep.degradation_time(),
                                                         ep.recovery_time(), prof.degradation,
                                                         prof.recovery);
                re_sum += re;
                auto failure = resilience::classify_failure(series, ep, opts);
                std::string recovery_text;
                try {
                    auto recovery = resilience::classify_recovery(series, ep, opts);
                    recovery_text = std::string(resilience::recovery_code(recovery)) + " (" +
                                    resilience::recovery_label(recovery) + ")";
                } catch (const Error& e) {
                    if (e.code() != Errc::insufficient_tail) throw;
                    recovery_text = "unclassified (tail too short)";
                }
                t.rows.push_back(
                    {report::Cell::integer(static_cast<std::int64_t>(i + 1)),
                     report::Cell::text(format_timestamp(static_cast<UtcSeconds>(ep.t_incident))),
                     report::Cell::text(format_timestamp(static_cast<UtcSeconds>(ep.t_floor))),
                     report::Cell::text(ep.recovered ? "yes" : "no"),
                     report::Cell::real(ep.degradation_time()),
                     report::Cell::real(ep.recovery_time()), report::Cell::real(prof.degradation),
                     report::Cell::real(prof.recovery), report::Cell::real(re),
                     report::Cell::text(std::string(resilience::failure_code(failure)) + " (" +
                                        resilience::failure_label(failure) + ")"),
                     report::Cell::text(recovery_text),
                     report::Cell::text(expedite[i] ? "yes" : "no")});
                t.heat.push_back("");
            }
            report::Report rep;
            rep.title = "Resilience analysis";
            rep.generated_at = generated_at;
            rep.tables.push_back(std::move(t));
            rep.tables.push_back(kv_table(
                "summary", "Series summary",
                {{"baseline_q0", report::Cell::real(series.baseline)},
                 {"episodes", report::Cell::integer(static_cast<std::int64_t>(episodes.size()))},
                 {"mean_re", report::Cell::real(episodes.empty()
                                                    ? 1.0
                                                    : re_sum / static_cast<double>(episodes.size()))}}));
            emit(rep, flags, out);
            return 0;
        }

        if (app.got_subcommand(fmea_cmd)) {
            IncidentStore store = load_store(fm_store, fm_subsystem, fm_component);
            auto scoring = fmea::parse_scoring_csv(read_file(fm_scoring));
            auto analysis = fmea::from_incidents(store, scoring, flags.strict,
                                                 fm_include_censored
                                                     ? DowntimePolicy::include_censored
                                                     : DowntimePolicy::exclude_open);
            report::Report rep;
            rep.title = "FMEA";
            rep.generated_at = generated_at;
            rep.tables.push_back(fmea_table(analysis.entries, heat));
            if (!analysis.unscored.empty()) {
                rep.tables.push_back(fmea_unscored_table(analysis.unscored));
                err << "warning: " << analysis.unscored.size()
                    << " failure mode(s) missing from the scoring map\n";
            }
            emit(rep, flags, out);
            return 0;
        }

        if (app.got_subcommand(mttd_cmd)) {
            PerformanceSeries ref = ingest::parse_performance_csv(read_file(d_reference));
            PerformanceSeries stream = ingest::parse_performance_csv(read_file(d_stream));
            std::vector<double> ref_values, stream_values;
            for (const auto& s : ref.samples) ref_values.push_back(s.value);
            for (const auto& s : stream.samples) stream_values.push_back(s.value);
            auto detection = drift::detect_drift(ref_values, stream_values, d_window, d_alpha);
            std::vector<std::pair<std::string, report::Cell>> rows;
            rows.emplace_back("detected", report::Cell::text(detection ? "yes" : "no"));
            if (detection) {
                rows.emplace_back("index",
                                  report::Cell::integer(static_cast<std::int64_t>(detection->index)));
                rows.emplace_back(
                    "timestamp",
                    report::Cell::text(format_timestamp(stream.samples[detection->index - 1].t)));
                rows.emplace_back("D", report::Cell::real(detection->statistic));
                rows.emplace_back("threshold", report::Cell::real(detection->threshold));
            } else {
                rows.emplace_back("threshold", report::Cell::real(drift::ks_threshold(
                                                   ref_values.size(), d_window, d_alpha)));
            }
            report::Report rep;
            rep.title = "Drift detection";
            rep.generated_at = generated_at;
            rep.tables.push_back(kv_table("drift", "Sliding-window distribution drift", rows));
            emit(rep, flags, out);
            return 0;
        }

        if (app.got_subcommand(alt_cmd)) {
            auto groups = parse_stress_csv(read_file(a_input));
            std::vector<std::pair<std::string, report::Cell>> rows;
            if (groups.size() >= 2) {
                auto model = alt::fit_stress_life(groups);
                rows.emplace_back("beta", report::Cell::real(model.shape));
                rows.emplace_back("eta0", report::Cell::real(model.eta0));
                rows.emplace_back("b_s", report::Cell::real(model.stress_coeff));
                if (a_stress) {
                    rows.emplace_back("eta_at_use", report::Cell::real(model.eta(*a_stress)));
                    if (a_time)
                        rows.emplace_back("reliability_at_use",
                                          report::Cell::real(model.reliability(*a_time, *a_stress)));
                }
            }
            if (a_bayes) {
                auto parse_axis = [](const std::string& text) {
                    double lo, hi;
                    std::size_t n;
                    if (std::sscanf(text.c_str(), "%lf:%lf:%zu", &lo, &hi, &n) != 3)
                        throw Error(Errc::bad_argument, "grid axis must be lo:hi:n, got " + text);
                    return std::tuple<double, double, std::size_t>{lo, hi, n};
                };
                auto [blo, bhi, bn] = parse_axis(a_grid_shape);
                auto [elo, ehi, en] = parse_axis(a_grid_scale);
                std::vector<double> all;
                for (const auto& g : groups)
                    all.insert(all.end(), g.durations.begin(), g.durations.end());
                auto grid = alt::uniform_grid(blo, bhi, bn, elo, ehi, en);
                grid = alt::bayes_update(grid, all);
                auto [mode_shape, mode_scale] = alt::posterior_mode(grid);
                rows.emplace_back("posterior_mode_beta", report::Cell::real(mode_shape));
                rows.emplace_back("posterior_mode_eta", report::Cell::real(mode_scale));
                if (a_time)
                    rows.emplace_back("posterior_reliability",
                                      report::Cell::real(alt::posterior_reliability(grid, *a_time)));
            }
            if (rows.empty())
                throw Error(Errc::too_few_stress_levels,
                            "need two stress groups for the stress-life fit or --bayes for a "
                            "single-group posterior");
            report::Report rep;
            rep.title = "Accelerated life analysis";
            rep.generated_at = generated_at;
            rep.tables.push_back(kv_table("alt", "Stress-life estimates", rows));
            emit(rep, flags, out);
            return 0;
        }

        if (app.got_subcommand(sim_cmd)) {
            sim::SimConfig config = sim::parse_sim_config(read_file(s_config));
            if (seed_given) config.seed = seed_value;
            sim::SimHistory history = sim::simulate(config);
            if (!s_history.empty()) write_file(s_history, sim::history_to_csv(history));
            report::Report rep;
            rep.title = "Simulation summary";
            rep.generated_at = generated_at;
            rep.tables.push_back(kv_table(
                "simulate", "Monte Carlo summary",
                {{"replications",
                  report::Cell::integer(static_cast<std::int64_t>(history.replications.size()))},
                 {"window_days", report::Cell::real(history.window_days)},
                 {"mean_count", report::Cell::real(history.mean_count())},
                 {"mean_downtime_hours", report::Cell::real(history.mean_downtime_hours())},
                 {"seed", report::Cell::integer(static_cast<std::int64_t>(history.seed))},
                 {"generator", report::Cell::text(history.generator)}}));
            emit(rep, flags, out);
            return 0;
        }

        if (app.got_subcommand(report_cmd)) {
            IncidentStore store = load_store(rp_store, std::nullopt, "");
            report::Report rep;
            rep.title = "Reliability report";
            rep.generated_at = generated_at;
            metrics::SummarizeOptions sub_opts;
            sub_opts.group = metrics::GroupBy::subsystem;
            rep.tables.push_back(metrics_subsystem_table(metrics::summarize(store, sub_opts),
                                                         metrics::subsystem_counts(store), heat));
            metrics::SummarizeOptions comp_opts;
            rep.tables.push_back(
                metrics_component_table(metrics::summarize(store, comp_opts), heat));
            if (!rp_scoring.empty()) {
                auto scoring = fmea::parse_scoring_csv(read_file(rp_scoring));
                auto analysis = fmea::from_incidents(store, scoring, flags.strict);
                rep.tables.push_back(fmea_table(analysis.entries, heat));
                if (!analysis.unscored.empty())
                    rep.tables.push_back(fmea_unscored_table(analysis.unscored));
            }
            emit(rep, flags, out);
            return 0;
        }

        err << "error: no subcommand selected\n";
        return 1;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        for (const auto& issue : e.issues())
            err << "  [" << errc_name(issue.code) << "] " << issue.subject << ": " << issue.message
                << "\n";
        return 1;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace airel::cli
