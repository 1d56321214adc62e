#include "airel/core.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace airel {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::duplicate_id: return "duplicate_id";
        case Errc::out_of_window: return "out_of_window";
        case Errc::end_before_start: return "end_before_start";
        case Errc::severity_range: return "severity_range";
        case Errc::malformed_row: return "malformed_row";
        case Errc::bad_timestamp: return "bad_timestamp";
        case Errc::unknown_subsystem: return "unknown_subsystem";
        case Errc::bad_rule: return "bad_rule";
        case Errc::non_monotonic_time: return "non_monotonic_time";
        case Errc::negative_value: return "negative_value";
        case Errc::no_baseline: return "no_baseline";
        case Errc::empty_store: return "empty_store";
        case Errc::empty_group: return "empty_group";
        case Errc::out_of_range: return "out_of_range";
        case Errc::negative_input: return "negative_input";
        case Errc::zero_demands: return "zero_demands";
        case Errc::failures_exceed_demands: return "failures_exceed_demands";
        case Errc::zero_mttr: return "zero_mttr";
        case Errc::zero_mtbf: return "zero_mtbf";
        case Errc::empty_input: return "empty_input";
        case Errc::nonpositive_gap: return "nonpositive_gap";
        case Errc::window_too_large: return "window_too_large";
        case Errc::too_few_samples: return "too_few_samples";
        case Errc::degenerate_samples: return "degenerate_samples";
        case Errc::no_convergence: return "no_convergence";
        case Errc::too_few_events: return "too_few_events";
        case Errc::epoch_out_of_range: return "epoch_out_of_range";
        case Errc::domain_error: return "domain_error";
        case Errc::bad_shape_order: return "bad_shape_order";
        case Errc::too_few_stress_levels: return "too_few_stress_levels";
        case Errc::negative_rate: return "negative_rate";
        case Errc::all_zero_likelihood: return "all_zero_likelihood";
        case Errc::bad_grid: return "bad_grid";
        case Errc::window_too_small: return "window_too_small";
        case Errc::bad_alpha: return "bad_alpha";
        case Errc::no_episode: return "no_episode";
        case Errc::insufficient_tail: return "insufficient_tail";
        case Errc::bad_threshold: return "bad_threshold";
        case Errc::score_out_of_range: return "score_out_of_range";
        case Errc::unmapped_failure_mode: return "unmapped_failure_mode";
        case Errc::bad_sim_config: return "bad_sim_config";
        case Errc::bad_config: return "bad_config";
        case Errc::io_error: return "io_error";
        case Errc::unknown_subcommand: return "unknown_subcommand";
        case Errc::bad_argument: return "bad_argument";
    }
    return "unknown_error";
}

const char* subsystem_name(Subsystem s) {
    switch (s) {
        case Subsystem::data: return "data";
        case Subsystem::model: return "model";
        case Subsystem::compute: return "compute";
        case Subsystem::code_software: return "code_software";
        case Subsystem::human: return "human";
        case Subsystem::unknown: return "unknown";
    }
    return "unknown";
}

std::optional<Subsystem> subsystem_from_name(const std::string& name) {
    if (name == "data") return Subsystem::data;
    if (name == "model") return Subsystem::model;
    if (name == "compute") return Subsystem::compute;
    if (name == "code_software") return Subsystem::code_software;
    if (name == "human") return Subsystem::human;
    if (name == "unknown") return Subsystem::unknown;
    return std::nullopt;
}

namespace {

// Days since 1970-01-01 for a civil date (Gregorian, proleptic).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

bool all_digits(const std::string& s, std::size_t from, std::size_t count) {
    if (from + count > s.size()) return false;
    for (std::size_t i = from; i < from + count; ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

int num(const std::string& s, std::size_t from, std::size_t count) {
    int v = 0;
    for (std::size_t i = from; i < from + count; ++i) v = v * 10 + (s[i] - '0');
    return v;
}

}  // namespace

UtcSeconds parse_timestamp(const std::string& text) {
    auto bad = [&] { return Error(Errc::bad_timestamp, "not an RFC 3339 UTC timestamp: " + text); };
    if (!all_digits(text, 0, 4) || text.size() < 10 || text[4] != '-' || !all_digits(text, 5, 2) ||
        text[7] != '-' || !all_digits(text, 8, 2))
        throw bad();
    int year = num(text, 0, 4), month = num(text, 5, 2), day = num(text, 8, 2);
    if (month < 1 || month > 12 || day < 1) throw bad();
    static const int month_days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int dim = month_days[month - 1];
    if (month == 2 && (year % 4 == 0 && (year % 100 != 0 || year % 400 == 0))) dim = 29;
    if (day > dim) throw bad();

    int hh = 0, mm = 0, ss = 0;
    if (text.size() > 10) {
        if (text[10] != 'T' || !all_digits(text, 11, 2) || text.size() < 20 || text[13] != ':' ||
            !all_digits(text, 14, 2) || text[16] != ':' || !all_digits(text, 17, 2))
            throw bad();
        hh = num(text, 11, 2);
        mm = num(text, 14, 2);
        ss = num(text, 17, 2);
        if (hh > 23 || mm > 59 || ss > 60) throw bad();
        if (ss == 60) ss = 59;  // fold leap seconds
        std::size_t pos = 19;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            std::size_t digits = 0;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
                ++pos;  // truncate: second precision is the contract
                ++digits;
            }
            if (digits == 0) throw bad();
        }
        if (pos + 1 != text.size() || text[pos] != 'Z') throw bad();
    }
    return days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day)) * 86400 +
           hh * 3600 + mm * 60 + ss;
}

std::string format_timestamp(UtcSeconds t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    std::int64_t y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), m, d, static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem / 60) % 60), static_cast<long long>(rem % 60));
    return buf;
}

IncidentStore validate_store(std::vector<Incident> incidents, Window window) {
    std::vector<ValidationIssue> issues;
    if (window.end <= window.start)
        issues.push_back({Errc::out_of_window, "window",
                          "window end " + format_timestamp(window.end) + " not after start " +
                              format_timestamp(window.start)});

    std::set<std::string> seen;
    for (const Incident& inc : incidents) {
        if (!seen.insert(inc.id).second)
            issues.push_back({Errc::duplicate_id, inc.id, "duplicate incident id"});
        if (inc.severity < 1 || inc.severity > 10)
            issues.push_back({Errc::severity_range, inc.id,
                              "severity " + std::to_string(inc.severity) + " outside 1..10"});
        if (inc.start < window.start || inc.start > window.end)
            issues.push_back({Errc::out_of_window, inc.id,
                              "start " + format_timestamp(inc.start) + " outside observation window"});
        if (inc.end && *inc.end < inc.start)
            issues.push_back({Errc::end_before_start, inc.id,
                              "end " + format_timestamp(*inc.end) + " precedes start"});
    }
    if (!issues.empty())
        throw ValidationError(issues, std::to_string(issues.size()) + " validation issue(s)");

    std::sort(incidents.begin(), incidents.end(), [](const Incident& a, const Incident& b) {
        if (a.start != b.start) return a.start < b.start;
        return a.id < b.id;
    });
    return IncidentStore(std::move(incidents), window);
}

IncidentStore filter_store(const IncidentStore& store, const std::optional<Subsystem>& subsystem,
                           const std::string& component) {
    std::vector<Incident> kept;
    for (const Incident& inc : store.incidents()) {
        if (subsystem && inc.subsystem != *subsystem) continue;
        if (!component.empty() && inc.component != component) continue;
        kept.push_back(inc);
    }
    return validate_store(std::move(kept), store.window());
}

Downtime incident_downtime(const Incident& inc, const Window& window) {
    if (inc.end) return {static_cast<double>(*inc.end - inc.start) / kSecondsPerHour, false};
    UtcSeconds clipped_end = std::max(window.end, inc.start);
    return {static_cast<double>(clipped_end - inc.start) / kSecondsPerHour, true};
}

}  // namespace airel
