#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "airel/core.hpp"
#include "airel/errors.hpp"
#include "airel/fmea.hpp"
#include "airel/ingest.hpp"

using namespace airel;
using namespace airel::fmea;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Incident incident(std::string id, std::string mode, std::string cause, double start_day,
                  double hours, bool open = false) {
    Incident inc;
    inc.id = std::move(id);
    inc.component = "svc";
    inc.subsystem = Subsystem::code_software;
    inc.start = static_cast<UtcSeconds>(start_day * 86400.0);
    if (!open) inc.end = inc.start + static_cast<UtcSeconds>(hours * 3600.0);
    inc.failure_mode = std::move(mode);
    inc.root_cause = std::move(cause);
    return inc;
}

const Window kWindow{0, 86400 * 100};

}  // namespace

TEST_CASE("score validates ranges and computes rpn and impact") {
    auto e = score("Demand Spike", "Capacity", 7, 6, 6, 7, 42.0);
    CHECK(e.rpn == 252);
    CHECK(e.impact_score == doctest::Approx(6 * 42.0).epsilon(1e-15));
    CHECK(e.failure_events == 7);
    CHECK(e.severity == 6);
    CHECK(e.occurrence == 6);
    CHECK(e.detection == 7);

    CHECK(score("m", "", 1, 1, 1, 1, 0.0).rpn == 1);
    CHECK(score("m", "", 1, 10, 10, 10, 0.0).rpn == 1000);

    CHECK_THROWS_AS(score("m", "", 1, 0, 5, 5, 1.0), Error);
    CHECK_THROWS_AS(score("m", "", 1, 5, 11, 5, 1.0), Error);
    CHECK_THROWS_AS(score("m", "", 1, 5, 5, -1, 1.0), Error);
    CHECK_THROWS_AS(score("m", "", 1, 5, 5, 5, -0.5), Error);
    try {
        score("m", "", 1, 0, 5, 5, 1.0);
    } catch (const Error& e2) {
        CHECK(e2.code() == Errc::score_out_of_range);
    }
}

TEST_CASE("scoring csv parses with and without the occurrence column") {
    auto basic = parse_scoring_csv(
        "failure_mode,severity,detection\n"
        "Demand Spike,6,7\n"
        "Slow Login,3,4\n");
    REQUIRE(basic.size() == 2);
    CHECK(basic.at("Demand Spike").severity == 6);
    CHECK(basic.at("Demand Spike").detection == 7);
    CHECK_FALSE(basic.at("Demand Spike").occurrence.has_value());

    auto with_occ = parse_scoring_csv(
        "failure_mode,severity,detection,occurrence\n"
        "Demand Spike,6,7,9\n");
    REQUIRE(with_occ.at("Demand Spike").occurrence.has_value());
    CHECK(*with_occ.at("Demand Spike").occurrence == 9);

    CHECK_THROWS_AS(parse_scoring_csv("mode,sev,det\nx,1,2\n"), Error);
    CHECK_THROWS_AS(parse_scoring_csv("failure_mode,severity,detection\nx,eleven,2\n"), Error);
    CHECK_THROWS_AS(parse_scoring_csv("failure_mode,severity,detection\nx,12,2\n"), Error);
    CHECK_THROWS_AS(parse_scoring_csv("failure_mode,severity,detection\n,1,2\n"), Error);
    CHECK_THROWS_AS(parse_scoring_csv("failure_mode,severity,detection\nx,1\n"), Error);
}

TEST_CASE("from_incidents groups, bins occurrence, and sums downtime") {
    std::vector<Incident> incs;
    for (int i = 0; i < 5; ++i)
        incs.push_back(incident("s" + std::to_string(i), "Spike", "Load", 1.0 + i, 2.0));
    incs.push_back(incident("l0", "Slow Login", "Cache", 10.0, 6.0));
    auto store = validate_store(incs, kWindow);

    auto map = parse_scoring_csv(
        "failure_mode,severity,detection\n"
        "Spike,6,7\n"
        "Slow Login,3,4\n");
    auto analysis = from_incidents(store, map, true);
    REQUIRE(analysis.entries.size() == 2);
    CHECK(analysis.unscored.empty());

    std::map<std::string, Entry> by_mode;
    for (const auto& e : analysis.entries) by_mode[e.failure_mode] = e;

    // n_max = 5: Spike bins to ceil(10*5/5) = 10, Slow Login to ceil(10*1/5) = 2.
    CHECK(by_mode.at("Spike").occurrence == 10);
    CHECK(by_mode.at("Spike").failure_events == 5);
    CHECK(by_mode.at("Spike").downtime_hours == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(by_mode.at("Spike").rpn == 6 * 10 * 7);
    CHECK(by_mode.at("Spike").impact_score == doctest::Approx(60.0).epsilon(1e-12));
    CHECK(by_mode.at("Spike").root_cause == "Load");

    CHECK(by_mode.at("Slow Login").occurrence == 2);
    CHECK(by_mode.at("Slow Login").rpn == 3 * 2 * 4);

    // An occurrence override replaces the derived bin.
    auto override_map = parse_scoring_csv(
        "failure_mode,severity,detection,occurrence\n"
        "Spike,6,7,3\n"
        "Slow Login,3,4,1\n");
    auto overridden = from_incidents(store, override_map, true);
    std::map<std::string, Entry> by_mode2;
    for (const auto& e : overridden.entries) by_mode2[e.failure_mode] = e;
    CHECK(by_mode2.at("Spike").occurrence == 3);
    CHECK(by_mode2.at("Slow Login").occurrence == 1);
}

TEST_CASE("from_incidents splits by root cause and honors the downtime policy") {
    std::vector<Incident> incs{
        incident("a", "Spike", "Load", 1.0, 2.0),
        incident("b", "Spike", "Deploy", 2.0, 4.0),
        incident("c", "Spike", "Load", 3.0, 0.0, /*open=*/true),  // censored at day 100
    };
    auto store = validate_store(incs, kWindow);
    auto map = parse_scoring_csv("failure_mode,severity,detection\nSpike,5,5\n");

    auto analysis = from_incidents(store, map, true);
    REQUIRE(analysis.entries.size() == 2);  // (Spike, Load) and (Spike, Deploy)
    std::map<std::string, Entry> by_cause;
    for (const auto& e : analysis.entries) by_cause[e.root_cause] = e;
    CHECK(by_cause.at("Load").failure_events == 2);
    // Open incident excluded from downtime by default.
    CHECK(by_cause.at("Load").downtime_hours == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(by_cause.at("Deploy").failure_events == 1);

    auto censored = from_incidents(store, map, true, DowntimePolicy::include_censored);
    std::map<std::string, Entry> by_cause2;
    for (const auto& e : censored.entries) by_cause2[e.root_cause] = e;
    // 2 h closed + 97 days censored tail.
    CHECK(by_cause2.at("Load").downtime_hours == doctest::Approx(2.0 + 97.0 * 24.0).epsilon(1e-12));
}

TEST_CASE("unknown modes: unscored in lax mode, an error in strict mode") {
    std::vector<Incident> incs{
        incident("a", "Spike", "Load", 1.0, 2.0),
        incident("b", "", "", 2.0, 3.0),         // unspecified mode
        incident("c", "Novel Failure", "?", 3.0, 1.0),
    };
    auto store = validate_store(incs, kWindow);
    auto map = parse_scoring_csv("failure_mode,severity,detection\nSpike,5,5\n");

    auto lax = from_incidents(store, map, false);
    REQUIRE(lax.entries.size() == 1);
    CHECK(lax.entries[0].failure_mode == "Spike");
    REQUIRE(lax.unscored.size() == 2);
    bool saw_unspecified = false;
    for (const auto& u : lax.unscored) {
        if (u.failure_mode == "(unspecified)") {
            saw_unspecified = true;
            CHECK(u.failure_events == 1);
            CHECK(u.downtime_hours == doctest::Approx(3.0).epsilon(1e-12));
        }
    }
    CHECK(saw_unspecified);

    try {
        from_incidents(store, map, true);
        FAIL("expected unmapped_failure_mode");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unmapped_failure_mode);
    }
}

TEST_CASE("prioritize orders by rpn, impact, then mode") {
    std::vector<Entry> entries{
        score("BBB", "x", 1, 6, 6, 1, 10.0),   // rpn 36, impact 60
        score("AAA", "x", 1, 6, 6, 7, 1.0),    // rpn 252, impact 6
        score("CCC", "x", 1, 6, 6, 1, 20.0),   // rpn 36, impact 120
        score("DDD", "x", 1, 6, 6, 1, 10.0),   // rpn 36, impact 60: name break
        score("EEE", "x", 1, 4, 6, 1, 500.0),  // rpn 24, impact 2000
    };
    auto ordered = prioritize(entries);
    REQUIRE(ordered.size() == 5);
    CHECK(ordered[0].failure_mode == "AAA");  // highest rpn first
    CHECK(ordered[1].failure_mode == "CCC");  // rpn tie: larger impact first
    CHECK(ordered[2].failure_mode == "BBB");  // impact tie: mode ascending
    CHECK(ordered[3].failure_mode == "DDD");
    CHECK(ordered[4].failure_mode == "EEE");  // low rpn last despite huge impact
}

TEST_CASE("heat tags band the risk number") {
    auto red = score("a", "", 1, 6, 6, 7, 0.0);     // 252
    auto yellow = score("b", "", 1, 6, 6, 1, 0.0);  // 36
    auto edge_yellow = score("c", "", 1, 5, 5, 1, 0.0);  // 25
    auto green = score("d", "", 1, 4, 6, 1, 0.0);   // 24
    CHECK(std::string(heat_tag(red)) == "red");
    CHECK(std::string(heat_tag(yellow)) == "yellow");
    CHECK(std::string(heat_tag(edge_yellow)) == "yellow");
    CHECK(std::string(heat_tag(green)) == "green");

    HeatThresholds custom{40, 30};
    CHECK(std::string(heat_tag(yellow, custom)) == "yellow");  // 36 >= 30, < 40
    CHECK(std::string(heat_tag(red, custom)) == "red");
}

TEST_CASE("sample dataset: risk table matches the published analysis") {
    auto rules = ingest::parse_mapping(slurp(std::string(AIREL_DATA_DIR) + "/sample_mapping.txt"));
    Window window{parse_timestamp("2024-05-01T00:00:00Z"), parse_timestamp("2024-10-21T00:00:00Z")};
    auto store = ingest::parse_incident_csv(
        slurp(std::string(AIREL_DATA_DIR) + "/sample_incidents.csv"), window, rules, false);
    auto slice = filter_store(store, Subsystem::code_software, "ChatGPT");
    REQUIRE(slice.size() == 17);

    auto map = parse_scoring_csv(slurp(std::string(AIREL_DATA_DIR) + "/sample_scoring.csv"));
    auto analysis = from_incidents(slice, map, false);
    auto ordered = prioritize(analysis.entries);

    REQUIRE(ordered.size() == 9);
    const int expected_rpn[] = {252, 36, 36, 36, 36, 36, 36, 27, 24};
    for (std::size_t i = 0; i < 9; ++i) {
        CAPTURE(i);
        CHECK(ordered[i].rpn == expected_rpn[i]);
        // The impact column is the severity-weighted downtime, recomputed
        // here instead of trusted from the table.
        CHECK(ordered[i].impact_score ==
              doctest::Approx(ordered[i].severity * ordered[i].downtime_hours).epsilon(1e-12));
    }
    CHECK(ordered[0].failure_mode == "Service Demand Spike");
    CHECK(ordered[0].failure_events == 7);
    // The six tied rows fall back to impact (descending), then the name.
    const char* tie_modes[] = {"Demand Spike for Paid Users", "Browser Compatibility Issue",
                               "Model Load Increase",         "Custom GPT Error Rates",
                               "Error Rate Increase",         "Feature Malfunction"};
    for (std::size_t i = 0; i < 6; ++i) {
        CAPTURE(i);
        CHECK(ordered[i + 1].failure_mode == tie_modes[i]);
    }
    CHECK(ordered[7].failure_mode == "Excessive Captcha Requests");
    CHECK(ordered[8].failure_mode == "Voice Feature Unavailable");
    CHECK(std::string(heat_tag(ordered[0])) == "red");
    CHECK(std::string(heat_tag(ordered[1])) == "yellow");
    CHECK(std::string(heat_tag(ordered[8])) == "green");

    // The two events without a stated mode stay out of the scored table.
    REQUIRE(analysis.unscored.size() == 1);
    CHECK(analysis.unscored[0].failure_mode == "(unspecified)");
    CHECK(analysis.unscored[0].failure_events == 2);
}
