#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "airel/core.hpp"
#include "airel/errors.hpp"
#include "airel/ingest.hpp"
#include "airel/life.hpp"
#include "airel/metrics.hpp"
#include "airel/numeric.hpp"
#include "airel/rng.hpp"

using namespace airel;
using namespace airel::metrics;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

IncidentStore load_sample_store() {
    auto rules = ingest::parse_mapping(slurp(std::string(AIREL_DATA_DIR) + "/sample_mapping.txt"));
    Window window{parse_timestamp("2024-05-01T00:00:00Z"), parse_timestamp("2024-10-21T00:00:00Z")};
    return ingest::parse_incident_csv(slurp(std::string(AIREL_DATA_DIR) + "/sample_incidents.csv"),
                                      window, rules, false);
}

Incident at_day(std::string id, double day, std::optional<double> end_day = std::nullopt) {
    Incident inc;
    inc.id = std::move(id);
    inc.component = "svc";
    inc.subsystem = Subsystem::compute;
    inc.start = static_cast<UtcSeconds>(day * 86400.0);
    if (end_day) inc.end = static_cast<UtcSeconds>(*end_day * 86400.0);
    return inc;
}

}  // namespace

TEST_CASE("sample dataset: subsystem counts and shares") {
    auto store = load_sample_store();
    REQUIRE(store.size() == 91);

    auto counts = subsystem_counts(store);
    REQUIRE(counts.size() == 6);  // five named + unknown
    std::map<Subsystem, std::size_t> got;
    for (const auto& c : counts) got[c.subsystem] = c.count;
    CHECK(got[Subsystem::code_software] == 42);
    CHECK(got[Subsystem::compute] == 23);
    CHECK(got[Subsystem::model] == 14);
    CHECK(got[Subsystem::data] == 7);
    CHECK(got[Subsystem::human] == 4);
    CHECK(got[Subsystem::unknown] == 1);

    // Taxonomy order with unknown appended last.
    CHECK(counts[0].subsystem == Subsystem::data);
    CHECK(counts[3].subsystem == Subsystem::code_software);
    CHECK(counts[5].subsystem == Subsystem::unknown);

    double share_sum = 0;
    for (const auto& c : counts) {
        CHECK(c.share_pct ==
              doctest::Approx(100.0 * static_cast<double>(c.count) / 91.0).epsilon(1e-12));
        share_sum += c.share_pct;
    }
    CHECK(share_sum == doctest::Approx(100.0).epsilon(1e-12));

    // One-decimal display values for the named subsystems.
    CHECK(numeric::round_half_away(10.0 * 100.0 * 42 / 91) / 10.0 == 46.2);
    CHECK(numeric::round_half_away(10.0 * 100.0 * 23 / 91) / 10.0 == 25.3);
    CHECK(numeric::round_half_away(10.0 * 100.0 * 14 / 91) / 10.0 == 15.4);
    CHECK(numeric::round_half_away(10.0 * 100.0 * 7 / 91) / 10.0 == 7.7);
    CHECK(numeric::round_half_away(10.0 * 100.0 * 4 / 91) / 10.0 == 4.4);
}

TEST_CASE("sample dataset: per-component summaries in the software slice") {
    auto store = load_sample_store();
    auto slice = filter_store(store, Subsystem::code_software);
    REQUIRE(slice.size() == 42);

    auto rows = summarize(slice, SummarizeOptions{GroupBy::component});
    REQUIRE(rows.size() == 9);
    std::map<std::string, GroupSummary> by_key;
    for (const auto& r : rows) by_key[r.key] = r;

    struct Expect {
        const char* key;
        std::size_t failures;
        double mtbf, rounded, rate, mttr_rounded;
    };
    const Expect expect[] = {
        {"ChatGPT", 17, 10.176470588235293, 10, 9.8265895953757223, 0},
        {"Authentication", 8, 21.625, 22, 4.6242774566473992, 0},
        {"Assistants API", 6, 28.833333333333332, 29, 3.4682080924855492, 0},
        {"ChatGPT, Platform API", 4, 43.25, 43, 2.3121387283236996, 0},
        {"Analytics Service", 2, 86.5, 87, 1.1560693641618498, 7},
        {"Platform API", 2, 86.5, 87, 1.1560693641618498, 0},
        {"Batch API", 1, 173.0, 173, 0.5780346820809249, 1},
        {"ChatGPT, Assistants API", 1, 173.0, 173, 0.5780346820809249, 0},
        {"Images API", 1, 173.0, 173, 0.5780346820809249, 0},
    };
    for (const auto& e : expect) {
        CAPTURE(e.key);
        REQUIRE(by_key.count(e.key) == 1);
        const auto& g = by_key[e.key];
        CHECK(g.failures == e.failures);
        REQUIRE(g.mtbf_days.has_value());
        CHECK(*g.mtbf_days == doctest::Approx(e.mtbf).epsilon(1e-12));
        CHECK(numeric::round_half_away(*g.mtbf_days) == e.rounded);
        CHECK(g.failure_rate_per_100d == doctest::Approx(e.rate).epsilon(1e-12));
        CHECK(numeric::round_half_away(g.mttr_days) == e.mttr_rounded);
        // Windowed MTBF and the per-100-day rate are exact reciprocals.
        CHECK(*g.mtbf_days * g.failure_rate_per_100d == doctest::Approx(100.0).epsilon(1e-12));
        CHECK(g.censored == 0);
    }
    CHECK(by_key["Analytics Service"].mttr_days == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(by_key["Batch API"].mttr_days == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("summarize: subsystem grouping lists zero-failure groups") {
    auto a = at_day("a", 1.0, 1.5);
    auto store = validate_store({a}, Window{0, 86400 * 10});
    auto rows = summarize(store, SummarizeOptions{GroupBy::subsystem});
    REQUIRE(rows.size() == 5);  // no unknown incidents, so no unknown row
    std::map<std::string, GroupSummary> by_key;
    for (const auto& r : rows) by_key[r.key] = r;
    CHECK(by_key["compute"].failures == 1);
    CHECK(by_key["data"].failures == 0);
    CHECK_FALSE(by_key["data"].mtbf_days.has_value());
    CHECK(by_key["data"].failure_rate_per_100d == 0.0);
    CHECK(by_key["compute"].mttr_days == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(summarize(validate_store({}, Window{0, 100})), Error);
}

TEST_CASE("summarize: mean-gap MTBF and censoring policy") {
    Window window{0, 86400 * 100};
    auto a = at_day("a", 10.0, 10.5);
    auto b = at_day("b", 20.0, 21.0);
    auto c = at_day("c", 40.0);  // open: censored at day 100 (60 days)
    auto store = validate_store({a, b, c}, window);

    SummarizeOptions gap_opts;
    gap_opts.mtbf_mean_gap = true;
    auto rows = summarize(store, gap_opts);
    REQUIRE(rows.size() == 1);
    // Mean gap: (40 - 10) / 2 = 15 days.
    REQUIRE(rows[0].mtbf_days.has_value());
    CHECK(*rows[0].mtbf_days == doctest::Approx(15.0).epsilon(1e-12));
    // Open incident excluded from MTTR by default: mean(0.5, 1.0) days.
    CHECK(rows[0].mttr_days == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(rows[0].censored == 1);
    CHECK(rows[0].total_downtime_hours == doctest::Approx(36.0).epsilon(1e-12));

    SummarizeOptions cens_opts;
    cens_opts.downtime = DowntimePolicy::include_censored;
    auto rows2 = summarize(store, cens_opts);
    // Censored tail (60 days) now enters: mean(12h, 24h, 1440h) = 492h = 20.5 days.
    CHECK(rows2[0].mttr_days == doctest::Approx(20.5).epsilon(1e-12));
    CHECK(rows2[0].total_downtime_hours == doctest::Approx(1476.0).epsilon(1e-12));

    // Mean-gap MTBF with a single failure stays undefined.
    auto lone = validate_store({at_day("x", 5.0)}, window);
    auto lone_rows = summarize(lone, gap_opts);
    CHECK_FALSE(lone_rows[0].mtbf_days.has_value());
}

TEST_CASE("composite reliability multiplies sources") {
    std::vector<double> vals{0.9, 0.8};
    CHECK(composite_reliability(vals) == doctest::Approx(0.72).epsilon(1e-15));
    std::vector<double> empty;
    CHECK(composite_reliability(empty) == 1.0);
    std::vector<double> bad{0.5, 1.2};
    CHECK_THROWS_AS(composite_reliability(bad), Error);
    std::vector<double> neg{-0.1};
    CHECK_THROWS_AS(composite_reliability(neg), Error);
}

TEST_CASE("cost of downtime and availability ratio") {
    CHECK(cost_of_downtime(10.0, 500.0) == 5000.0);
    CHECK(cost_of_downtime(0.0, 500.0) == 0.0);
    CHECK_THROWS_AS(cost_of_downtime(-1.0, 5.0), Error);
    CHECK_THROWS_AS(cost_of_downtime(1.0, -5.0), Error);

    CHECK(ari(2.0, 100.0) == doctest::Approx(50.0).epsilon(1e-15));
    CHECK_THROWS_AS(ari(0.0, 100.0), Error);
    CHECK_THROWS_AS(ari(2.0, 0.0), Error);
}

TEST_CASE("POFOD Wilson interval against fixed references") {
    auto p1 = pofod(50, 100, 0.05);
    CHECK(p1.estimate == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p1.lo == doctest::Approx(0.40383153036599562).epsilon(1e-12));
    CHECK(p1.hi == doctest::Approx(0.59616846963400438).epsilon(1e-12));

    auto p2 = pofod(3, 1000, 0.05);
    CHECK(p2.estimate == doctest::Approx(0.003).epsilon(1e-15));
    CHECK(p2.lo == doctest::Approx(0.0010207838811386186).epsilon(1e-10));
    CHECK(p2.hi == doctest::Approx(0.0087830140535031728).epsilon(1e-10));

    auto p3 = pofod(0, 50, 0.05);
    CHECK(p3.estimate == 0.0);
    CHECK(p3.lo == 0.0);
    CHECK(p3.hi > 0.0);

    CHECK_THROWS_AS(pofod(1, 0), Error);
    CHECK_THROWS_AS(pofod(5, 4), Error);
    CHECK_THROWS_AS(pofod(1, 10, 0.0), Error);
    CHECK_THROWS_AS(pofod(1, 10, 1.0), Error);
}

TEST_CASE("empirical survival uses a strict threshold") {
    EmpiricalSurvival surv({1.0, 2.0, 2.0, 4.0});
    CHECK(surv(0.5) == 1.0);
    CHECK(surv(1.0) == doctest::Approx(0.75).epsilon(1e-15));   // strictly greater than 1
    CHECK(surv(1.5) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(surv(2.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(surv(4.0) == 0.0);
    CHECK(surv(100.0) == 0.0);

    REQUIRE(surv.times().size() == 3);  // unique sorted gaps
    CHECK(surv.times()[0] == 1.0);
    CHECK(surv.times()[2] == 4.0);
    CHECK(surv.survival()[0] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(surv.survival()[2] == 0.0);

    CHECK_THROWS_AS(EmpiricalSurvival(std::vector<double>{}), Error);
    CHECK_THROWS_AS(EmpiricalSurvival(std::vector<double>{1.0, 0.0}), Error);
    CHECK_THROWS_AS(EmpiricalSurvival(std::vector<double>{-2.0}), Error);
}

TEST_CASE("empirical survival tracks the generating distribution (DKW band)") {
    // 10k exponential gaps; sup |S_n - e^{-t}| stays inside the 99% DKW band.
    const std::size_t n = 10000;
    const double rate = 1.0;
    Rng rng(424242);
    std::vector<double> gaps;
    gaps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) gaps.push_back(life::sample_exponential(rng, rate));
    EmpiricalSurvival surv(gaps);

    const double eps = 0.016276236307187292;  // sqrt(ln(2/0.01) / (2 * 10000))
    double worst = 0;
    for (std::size_t i = 0; i < surv.times().size(); ++i) {
        double t = surv.times()[i];
        double expected = std::exp(-rate * t);
        // Check on both sides of the step at t.
        worst = std::max(worst, std::abs(surv.survival()[i] - expected));
        double before = (i == 0) ? 1.0 : surv.survival()[i - 1];
        worst = std::max(worst, std::abs(before - expected));
    }
    CHECK(worst < eps);
}

TEST_CASE("interarrival gaps drop zero gaps and the censored tail") {
    Window window{0, 86400 * 10};
    auto store = validate_store(
        {at_day("a", 0.5), at_day("b", 1.5), at_day("c", 3.5), at_day("d", 3.5), at_day("e", 6.5)},
        window);
    auto gaps = interarrival_gaps(store);
    REQUIRE(gaps.size() == 3);
    CHECK(gaps[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gaps[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(gaps[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("rolling failure rate: tiling and flat-series trend") {
    Window window{0, 86400 * 12};
    auto store = validate_store(
        {at_day("a", 1.0), at_day("b", 2.0), at_day("c", 5.0), at_day("d", 10.5)}, window);

    // Non-overlapping windows (step == width) partition (0, 12]; the summed
    // counts must equal the number of events after the first window opens.
    auto tiled = rolling_failure_rate(store, 3.0, 3.0);
    REQUIRE(tiled.t_days.size() == 4);  // t = 3, 6, 9, 12
    double total = 0;
    for (double r : tiled.rate_per_day) total += r * 3.0;
    CHECK(total == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(tiled.rate_per_day[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(tiled.rate_per_day[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(tiled.rate_per_day[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tiled.rate_per_day[3] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // A perfectly periodic failure process has a flat rolling rate, so the
    // fitted log-trend slope vanishes.
    std::vector<Incident> periodic;
    for (int i = 0; i < 12; ++i) periodic.push_back(at_day("p" + std::to_string(i), 0.5 + i));
    auto flat = validate_store(periodic, window);
    auto rr = rolling_failure_rate(flat, 2.0, 1.0);
    for (double r : rr.rate_per_day) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(rr.trend_slope) < 1e-12);
    CHECK(rr.trend_intercept == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(rolling_failure_rate(store, 0.0, 1.0), Error);
    CHECK_THROWS_AS(rolling_failure_rate(store, 20.0, 1.0), Error);
}

TEST_CASE("sample dataset: 14-day rolling rate matches the frozen curve") {
    auto store = load_sample_store();
    auto chat = filter_store(store, Subsystem::code_software, "ChatGPT");
    REQUIRE(chat.size() == 17);

    // All 27 ChatGPT incidents across subsystems drive the published curve.
    auto all_chat = filter_store(store, std::nullopt, "ChatGPT");
    REQUIRE(all_chat.size() == 27);

    auto rr = rolling_failure_rate(all_chat, 14.0, 1.0);
    static const int counts[160] = {
        6, 6, 6, 6, 6, 5, 5, 5, 5, 5, 5, 5, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4,
        4, 3, 3, 3, 3, 3, 3, 4, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 2, 3, 2, 2, 2, 2, 2, 2, 2, 2, 2,
        2, 2, 2, 3, 2, 2, 2, 2, 2, 3, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1,
        1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1,
        1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1,
        1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
    REQUIRE(rr.t_days.size() == 160);
    for (std::size_t i = 0; i < 160; ++i) {
        CAPTURE(i);
        CHECK(rr.t_days[i] == doctest::Approx(14.0 + static_cast<double>(i)).epsilon(1e-12));
        CHECK(rr.rate_per_day[i] == doctest::Approx(counts[i] / 14.0).epsilon(1e-12));
    }
    CHECK(rr.trend_intercept == doctest::Approx(0.82991887685616972).epsilon(1e-12));
    CHECK(rr.trend_slope == doctest::Approx(-0.15471231199149327).epsilon(1e-12));
    CHECK(rr.trend_slope < 0);  // failure intensity decays over the window
}
