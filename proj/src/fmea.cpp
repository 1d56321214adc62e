#include "airel/fmea.hpp"

#include <algorithm>
#include <cmath>

#include "airel/ingest.hpp"

namespace airel::fmea {

namespace {

int parse_score(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error(Errc::malformed_row, where + ": score not an integer: " + text);
    }
}

void check_score(int v, const char* what) {
    if (v < 1 || v > 10)
        throw Error(Errc::score_out_of_range,
                    std::string(what) + " " + std::to_string(v) + " outside 1..10");
}

}  // namespace

ScoringMap parse_scoring_csv(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char c : text) {
            if (c == '\n') {
                if (!cur.empty() && cur.back() == '\r') cur.pop_back();
                lines.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) lines.push_back(cur);
    }
    if (lines.empty() ||
        (lines[0] != "failure_mode,severity,detection" &&
         lines[0] != "failure_mode,severity,detection,occurrence"))
        throw Error(Errc::malformed_row,
                    "scoring CSV header must be 'failure_mode,severity,detection[,occurrence]'");
    bool has_occurrence = lines[0] == "failure_mode,severity,detection,occurrence";

    ScoringMap map;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::string where = "line " + std::to_string(i + 1);
        auto f = ingest::split_csv_row(lines[i]);
        std::size_t expected = has_occurrence ? 4 : 3;
        if (f.size() != expected)
            throw Error(Errc::malformed_row, where + ": expected " + std::to_string(expected) +
                                                 " fields, found " + std::to_string(f.size()));
        Scores s;
        s.severity = parse_score(f[1], where);
        s.detection = parse_score(f[2], where);
        check_score(s.severity, "severity");
        check_score(s.detection, "detection");
        if (has_occurrence && !f[3].empty()) {
            int occ = parse_score(f[3], where);
            check_score(occ, "occurrence");
            s.occurrence = occ;
        }
        if (f[0].empty()) throw Error(Errc::malformed_row, where + ": empty failure mode");
        map[f[0]] = s;
    }
    return map;
}

Entry score(const std::string& failure_mode, const std::string& root_cause,
            std::size_t failure_events, int severity, int occurrence, int detection,
            double downtime_hours) {
    check_score(severity, "severity");
    check_score(occurrence, "occurrence");
    check_score(detection, "detection");
    if (downtime_hours < 0) throw Error(Errc::negative_input, "downtime must be non-negative");
    Entry e;
    e.failure_mode = failure_mode;
    e.root_cause = root_cause;
    e.failure_events = failure_events;
    e.severity = severity;
    e.occurrence = occurrence;
    e.detection = detection;
    e.downtime_hours = downtime_hours;
    e.impact_score = severity * downtime_hours;
    e.rpn = severity * occurrence * detection;
    return e;
}

Analysis from_incidents(const IncidentStore& store, const ScoringMap& map, bool strict,
                        DowntimePolicy policy) {
    struct GroupAgg {
        std::size_t count = 0;
        double downtime_hours = 0;
    };
    std::map<std::pair<std::string, std::string>, GroupAgg> groups;
    for (const Incident& inc : store.incidents()) {
        std::string mode = inc.failure_mode.empty() ? "(unspecified)" : inc.failure_mode;
        std::string cause = inc.root_cause.empty() ? "(unspecified)" : inc.root_cause;
        GroupAgg& g = groups[{mode, cause}];
        ++g.count;
        Downtime dt = incident_downtime(inc, store.window());
        if (!dt.censored || policy == DowntimePolicy::include_censored)
            g.downtime_hours += dt.hours;
    }

    std::size_t n_max = 0;
    for (const auto& [key, agg] : groups) n_max = std::max(n_max, agg.count);

    Analysis out;
    for (const auto& [key, agg] : groups) {
        const auto& [mode, cause] = key;
        auto it = map.find(mode);
        if (it == map.end()) {
            if (strict)
                throw Error(Errc::unmapped_failure_mode,
                            "no scores for failure mode '" + mode + "'");
            out.unscored.push_back({mode, cause, agg.count, agg.downtime_hours});
            continue;
        }
        int occurrence;
        if (it->second.occurrence) {
            occurrence = *it->second.occurrence;
        } else {
            // 1..10 bin of the event count relative to the busiest mode.
            double scaled = 10.0 * static_cast<double>(agg.count) / static_cast<double>(n_max);
            occurrence = std::clamp(static_cast<int>(std::ceil(scaled)), 1, 10);
        }
        out.entries.push_back(score(mode, cause, agg.count, it->second.severity, occurrence,
                                    it->second.detection, agg.downtime_hours));
    }
    out.entries = prioritize(std::move(out.entries));
    return out;
}

std::vector<Entry> prioritize(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.rpn != b.rpn) return a.rpn > b.rpn;
        if (a.impact_score != b.impact_score) return a.impact_score > b.impact_score;
        return a.failure_mode < b.failure_mode;
    });
    return entries;
}

const char* heat_tag(const Entry& e, const HeatThresholds& heat) {
    if (e.rpn >= heat.rpn_red) return "red";
    if (e.rpn >= heat.rpn_yellow) return "yellow";
    return "green";
}

}  // namespace airel::fmea
