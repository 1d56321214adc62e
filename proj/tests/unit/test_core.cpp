#include <doctest.h>

#include <optional>
#include <string>
#include <vector>

#include "airel/core.hpp"
#include "airel/errors.hpp"

using namespace airel;

namespace {

Incident make_incident(std::string id, UtcSeconds start,
                       std::optional<UtcSeconds> end = std::nullopt) {
    Incident inc;
    inc.id = std::move(id);
    inc.component = "svc";
    inc.subsystem = Subsystem::code_software;
    inc.start = start;
    inc.end = end;
    return inc;
}

}  // namespace

TEST_CASE("subsystem names round trip") {
    for (Subsystem s : kNamedSubsystems) {
        auto back = subsystem_from_name(subsystem_name(s));
        REQUIRE(back.has_value());
        CHECK(*back == s);
    }
    CHECK(subsystem_from_name("unknown") == Subsystem::unknown);
    CHECK_FALSE(subsystem_from_name("network").has_value());
    CHECK_FALSE(subsystem_from_name("").has_value());
    CHECK(std::string(subsystem_name(Subsystem::code_software)) == "code_software");
}

TEST_CASE("timestamp parsing: full form, bare date, fraction, leap second") {
    CHECK(parse_timestamp("2024-05-01T00:00:00Z") == 1714521600);
    CHECK(parse_timestamp("2024-05-01") == 1714521600);
    CHECK(parse_timestamp("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_timestamp("1969-12-31T23:59:59Z") == -1);

    // Fractional seconds truncate.
    CHECK(parse_timestamp("2024-05-01T12:30:45.999Z") == 1714521600 + 12 * 3600 + 30 * 60 + 45);
    CHECK(parse_timestamp("2024-05-01T12:30:45.000001Z") ==
          parse_timestamp("2024-05-01T12:30:45Z"));

    // Leap second folds onto :59.
    CHECK(parse_timestamp("2016-12-31T23:59:60Z") == parse_timestamp("2016-12-31T23:59:59Z"));

    // Leap-year day handling.
    CHECK_NOTHROW(parse_timestamp("2024-02-29T00:00:00Z"));
    CHECK_THROWS_AS(parse_timestamp("2023-02-29T00:00:00Z"), Error);
}

TEST_CASE("timestamp parsing rejects malformed input") {
    const char* bad[] = {
        "",
        "20240501",
        "2024-13-01T00:00:00Z",
        "2024-00-10T00:00:00Z",
        "2024-04-31T00:00:00Z",
        "2024-05-01T24:00:00Z",
        "2024-05-01T00:61:00Z",
        "2024-05-01 00:00:00Z",
        "2024-05-01T00:00:00",
        "2024-05-01T00:00:00+00:00",
        "2024-05-01T00:00:00.Z",
        "2024-05-01T00:00Z",
        "not-a-date",
    };
    for (const char* text : bad) {
        CAPTURE(text);
        CHECK_THROWS_AS(parse_timestamp(text), Error);
        try {
            parse_timestamp(text);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::bad_timestamp);
        }
    }
}

TEST_CASE("timestamp formatting round trips") {
    const char* samples[] = {
        "2024-05-01T00:00:00Z",
        "2024-10-21T23:59:59Z",
        "2000-02-29T12:00:01Z",
        "1970-01-01T00:00:00Z",
    };
    for (const char* s : samples) {
        CHECK(format_timestamp(parse_timestamp(s)) == s);
    }
    CHECK(format_timestamp(parse_timestamp("2024-05-01")) == "2024-05-01T00:00:00Z");
    CHECK(format_timestamp(-1) == "1969-12-31T23:59:59Z");
}

TEST_CASE("validate_store sorts by start then id") {
    Window window{0, 1000};
    std::vector<Incident> incs{
        make_incident("B", 500),
        make_incident("C", 100),
        make_incident("A", 500),
    };
    auto store = validate_store(incs, window);
    REQUIRE(store.size() == 3);
    CHECK(store.incidents()[0].id == "C");
    CHECK(store.incidents()[1].id == "A");  // tie on start broken by id
    CHECK(store.incidents()[2].id == "B");
    CHECK(store.window() == window);
}

TEST_CASE("validate_store collects every violation in one pass") {
    Window window{1000, 2000};
    std::vector<Incident> incs;
    incs.push_back(make_incident("dup", 1100));
    incs.push_back(make_incident("dup", 1200));           // duplicate id
    auto early = make_incident("early", 500);             // before window
    incs.push_back(early);
    auto backwards = make_incident("rev", 1500, 1400);    // end precedes start
    incs.push_back(backwards);
    auto hot = make_incident("hot", 1300);
    hot.severity = 11;                                    // out of range
    incs.push_back(hot);

    try {
        validate_store(incs, window);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(e.issues().size() == 4);
        bool saw_dup = false, saw_window = false, saw_end = false, saw_sev = false;
        for (const auto& issue : e.issues()) {
            if (issue.code == Errc::duplicate_id && issue.subject == "dup") saw_dup = true;
            if (issue.code == Errc::out_of_window && issue.subject == "early") saw_window = true;
            if (issue.code == Errc::end_before_start && issue.subject == "rev") saw_end = true;
            if (issue.code == Errc::severity_range && issue.subject == "hot") saw_sev = true;
        }
        CHECK(saw_dup);
        CHECK(saw_window);
        CHECK(saw_end);
        CHECK(saw_sev);
    }
}

TEST_CASE("validate_store rejects an inverted window") {
    std::vector<Incident> none;
    try {
        validate_store(none, Window{100, 100});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(e.issues().size() == 1);
        CHECK(e.issues()[0].code == Errc::out_of_window);
        CHECK(e.issues()[0].subject == "window");
    }
}

TEST_CASE("validate_store allows start exactly on either window edge") {
    Window window{1000, 2000};
    std::vector<Incident> incs{make_incident("lo", 1000), make_incident("hi", 2000)};
    CHECK_NOTHROW(validate_store(incs, window));
}

TEST_CASE("filter_store by subsystem and component") {
    Window window{0, 1000};
    auto a = make_incident("a", 10);
    a.component = "api";
    a.subsystem = Subsystem::compute;
    auto b = make_incident("b", 20);
    b.component = "api";
    b.subsystem = Subsystem::model;
    auto c = make_incident("c", 30);
    c.component = "web";
    c.subsystem = Subsystem::compute;
    auto store = validate_store({a, b, c}, window);

    auto compute_only = filter_store(store, Subsystem::compute);
    REQUIRE(compute_only.size() == 2);
    CHECK(compute_only.incidents()[0].id == "a");
    CHECK(compute_only.incidents()[1].id == "c");

    auto api_compute = filter_store(store, Subsystem::compute, "api");
    REQUIRE(api_compute.size() == 1);
    CHECK(api_compute.incidents()[0].id == "a");

    auto everything = filter_store(store, std::nullopt, "");
    CHECK(everything.size() == 3);
    CHECK(everything.window() == window);

    auto nothing = filter_store(store, Subsystem::human);
    CHECK(nothing.empty());
}

TEST_CASE("incident downtime with and without censoring") {
    Window window{0, 86400 * 10};

    auto closed = make_incident("c", 3600, 3600 * 5);
    auto d1 = incident_downtime(closed, window);
    CHECK(d1.hours == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_FALSE(d1.censored);

    auto open = make_incident("o", 86400 * 9);  // open, one day before window end
    auto d2 = incident_downtime(open, window);
    CHECK(d2.hours == doctest::Approx(24.0).epsilon(1e-15));
    CHECK(d2.censored);

    auto at_edge = make_incident("e", 86400 * 10);  // open, starts at the window end
    auto d3 = incident_downtime(at_edge, window);
    CHECK(d3.hours == 0.0);
    CHECK(d3.censored);

    auto instant = make_incident("i", 500, 500);  // zero-duration closed incident
    auto d4 = incident_downtime(instant, window);
    CHECK(d4.hours == 0.0);
    CHECK_FALSE(d4.censored);
}
