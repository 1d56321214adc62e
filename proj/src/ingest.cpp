#include "airel/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <nlohmann/json.hpp>

namespace airel::ingest {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
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
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    return lines;
}

}  // namespace

bool glob_match(const std::string& pattern, const std::string& text) {
    std::size_t p = 0, t = 0;
    std::size_t star = std::string::npos, backtrack = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '*' )) {
            star = p++;
            backtrack = t;
        } else if (p < pattern.size() && lower(pattern[p]) == lower(text[t])) {
            ++p;
            ++t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++backtrack;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

std::vector<MappingRule> parse_mapping(const std::string& text) {
    std::vector<MappingRule> rules;
    auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string line = trim(lines[i]);
        if (line.empty() || line[0] == '#') continue;
        std::size_t arrow = line.find("=>");
        if (arrow == std::string::npos)
            throw Error(Errc::bad_rule, "line " + std::to_string(i + 1) + ": missing '=>'");
        std::string lhs = trim(line.substr(0, arrow));
        std::string rhs = trim(line.substr(arrow + 2));
        MappingRule rule;
        std::size_t bar = lhs.find('|');
        if (bar == std::string::npos) {
            rule.component_glob = trim(lhs);
        } else {
            rule.component_glob = trim(lhs.substr(0, bar));
            rule.mode_glob = trim(lhs.substr(bar + 1));
            if (rule.mode_glob.empty())
                throw Error(Errc::bad_rule, "line " + std::to_string(i + 1) + ": empty mode glob");
        }
        if (rule.component_glob.empty())
            throw Error(Errc::bad_rule, "line " + std::to_string(i + 1) + ": empty component glob");
        auto sub = subsystem_from_name(rhs);
        if (!sub)
            throw Error(Errc::bad_rule,
                        "line " + std::to_string(i + 1) + ": unknown subsystem '" + rhs + "'");
        rule.subsystem = *sub;
        rules.push_back(rule);
    }
    return rules;
}

Subsystem classify(const std::vector<MappingRule>& rules, const std::string& component,
                   const std::string& failure_mode) {
    for (const MappingRule& rule : rules) {
        if (!glob_match(rule.component_glob, component)) continue;
        if (!rule.mode_glob.empty() && !glob_match(rule.mode_glob, failure_mode)) continue;
        return rule.subsystem;
    }
    return Subsystem::unknown;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            if (!cur.empty())
                throw Error(Errc::malformed_row, "quote inside unquoted field");
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
        ++i;
    }
    if (quoted) throw Error(Errc::malformed_row, "unterminated quoted field");
    fields.push_back(cur);
    return fields;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

static const char* kIncidentHeader =
    "id,component,subsystem,start,end,severity,failure_mode,root_cause,description";

IncidentStore parse_incident_csv(const std::string& text, Window window,
                                 const std::vector<MappingRule>& rules, bool strict) {
    auto lines = split_lines(text);
    if (lines.empty() || trim(lines[0]) != kIncidentHeader)
        throw Error(Errc::malformed_row,
                    std::string("incident CSV must start with header '") + kIncidentHeader + "'");

    std::vector<Incident> incidents;
    std::vector<ValidationIssue> issues;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (trim(line).empty()) continue;
        std::string where = "line " + std::to_string(i + 1);
        std::vector<std::string> f;
        try {
            f = split_csv_row(line);
        } catch (const Error& e) {
            issues.push_back({Errc::malformed_row, where, e.what()});
            continue;
        }
        if (f.size() != 9) {
            issues.push_back({Errc::malformed_row, where,
                              "expected 9 fields, found " + std::to_string(f.size())});
            continue;
        }
        Incident inc;
        inc.id = trim(f[0]);
        inc.component = trim(f[1]);
        if (inc.id.empty()) {
            issues.push_back({Errc::malformed_row, where, "empty id"});
            continue;
        }
        try {
            inc.start = parse_timestamp(trim(f[3]));
            std::string end = trim(f[4]);
            if (!end.empty()) inc.end = parse_timestamp(end);
        } catch (const Error& e) {
            issues.push_back({Errc::bad_timestamp, where, e.what()});
            continue;
        }
        std::string sev = trim(f[5]);
        if (sev.empty()) {
            inc.severity = 5;
        } else {
            try {
                std::size_t used = 0;
                inc.severity = std::stoi(sev, &used);
                if (used != sev.size()) throw std::invalid_argument(sev);
            } catch (const std::exception&) {
                issues.push_back({Errc::malformed_row, where, "severity not an integer: " + sev});
                continue;
            }
        }
        inc.failure_mode = trim(f[6]);
        inc.root_cause = trim(f[7]);
        inc.description = f[8];

        std::string sub = trim(f[2]);
        if (!sub.empty()) {
            auto parsed = subsystem_from_name(sub);
            if (!parsed) {
                issues.push_back({Errc::unknown_subsystem, where, "unknown subsystem '" + sub + "'"});
                continue;
            }
            inc.subsystem = *parsed;
        } else {
            inc.subsystem = classify(rules, inc.component, inc.failure_mode);
            if (strict && inc.subsystem == Subsystem::unknown) {
                issues.push_back({Errc::unknown_subsystem, where,
                                  "no mapping rule classifies component '" + inc.component + "'"});
                continue;
            }
        }
        incidents.push_back(std::move(inc));
    }
    if (!issues.empty())
        throw ValidationError(issues, std::to_string(issues.size()) + " CSV issue(s)");
    return validate_store(std::move(incidents), window);
}

std::string store_to_csv(const IncidentStore& store) {
    std::ostringstream out;
    out << kIncidentHeader << "\n";
    for (const Incident& inc : store.incidents()) {
        out << csv_escape(inc.id) << ',' << csv_escape(inc.component) << ','
            << subsystem_name(inc.subsystem) << ',' << format_timestamp(inc.start) << ','
            << (inc.end ? format_timestamp(*inc.end) : std::string()) << ',' << inc.severity << ','
            << csv_escape(inc.failure_mode) << ',' << csv_escape(inc.root_cause) << ','
            << csv_escape(inc.description) << "\n";
    }
    return out.str();
}

std::string store_to_json(const IncidentStore& store) {
    ordered_json j;
    j["window"] = {{"start", format_timestamp(store.window().start)},
                   {"end", format_timestamp(store.window().end)}};
    j["incidents"] = ordered_json::array();
    for (const Incident& inc : store.incidents()) {
        ordered_json e;
        e["id"] = inc.id;
        e["component"] = inc.component;
        e["subsystem"] = subsystem_name(inc.subsystem);
        e["start"] = format_timestamp(inc.start);
        if (inc.end)
            e["end"] = format_timestamp(*inc.end);
        else
            e["end"] = nullptr;
        e["severity"] = inc.severity;
        e["failure_mode"] = inc.failure_mode;
        e["root_cause"] = inc.root_cause;
        e["description"] = inc.description;
        j["incidents"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

IncidentStore store_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw Error(Errc::malformed_row, std::string("store JSON: ") + e.what());
    }
    try {
        Window w{parse_timestamp(j.at("window").at("start").get<std::string>()),
                 parse_timestamp(j.at("window").at("end").get<std::string>())};
        std::vector<Incident> incidents;
        for (const auto& e : j.at("incidents")) {
            Incident inc;
            inc.id = e.at("id").get<std::string>();
            inc.component = e.at("component").get<std::string>();
            auto sub = subsystem_from_name(e.at("subsystem").get<std::string>());
            if (!sub) throw Error(Errc::unknown_subsystem, e.at("subsystem").get<std::string>());
            inc.subsystem = *sub;
            inc.start = parse_timestamp(e.at("start").get<std::string>());
            if (!e.at("end").is_null()) inc.end = parse_timestamp(e.at("end").get<std::string>());
            inc.severity = e.at("severity").get<int>();
            inc.failure_mode = e.at("failure_mode").get<std::string>();
            inc.root_cause = e.at("root_cause").get<std::string>();
            inc.description = e.at("description").get<std::string>();
            incidents.push_back(std::move(inc));
        }
        return validate_store(std::move(incidents), w);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::malformed_row, std::string("store JSON: ") + e.what());
    }
}

PerformanceSeries parse_performance_csv(const std::string& text,
                                        std::optional<double> baseline_override,
                                        double dip_threshold) {
    auto lines = split_lines(text);
    PerformanceSeries series;
    bool header_seen = false;
    std::vector<ValidationIssue> issues;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string line = trim(lines[i]);
        std::string where = "line " + std::to_string(i + 1);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = trim(line.substr(1));
            if (body.rfind("release", 0) == 0) {
                std::string stamp = trim(body.substr(7));
                try {
                    series.releases.push_back(parse_timestamp(stamp));
                } catch (const Error& e) {
                    issues.push_back({Errc::bad_timestamp, where, e.what()});
                }
            }
            continue;
        }
        if (!header_seen) {
            if (line != "timestamp,value")
                throw Error(Errc::malformed_row,
                            "performance CSV must start with header 'timestamp,value'");
            header_seen = true;
            continue;
        }
        auto f = split_csv_row(line);
        if (f.size() != 2) {
            issues.push_back({Errc::malformed_row, where, "expected 2 fields"});
            continue;
        }
        PerfSample s;
        try {
            s.t = parse_timestamp(trim(f[0]));
        } catch (const Error& e) {
            issues.push_back({Errc::bad_timestamp, where, e.what()});
            continue;
        }
        try {
            std::size_t used = 0;
            s.value = std::stod(trim(f[1]), &used);
            if (used != trim(f[1]).size()) throw std::invalid_argument(f[1]);
        } catch (const std::exception&) {
            issues.push_back({Errc::malformed_row, where, "value not a number: " + f[1]});
            continue;
        }
        if (s.value < 0) {
            issues.push_back({Errc::negative_value, where, "negative performance value"});
            continue;
        }
        if (!series.samples.empty() && s.t <= series.samples.back().t) {
            issues.push_back({Errc::non_monotonic_time, where, "timestamps must strictly increase"});
            continue;
        }
        series.samples.push_back(s);
    }
    if (!header_seen)
        throw Error(Errc::malformed_row, "performance CSV must start with header 'timestamp,value'");
    if (!issues.empty())
        throw ValidationError(issues, std::to_string(issues.size()) + " performance CSV issue(s)");
    if (series.samples.size() < 2)
        throw Error(Errc::empty_input, "performance series needs at least 2 samples");

    std::sort(series.releases.begin(), series.releases.end());

    if (baseline_override) {
        if (*baseline_override <= 0)
            throw Error(Errc::no_baseline, "baseline override must be positive");
        series.baseline = *baseline_override;
        return series;
    }
    // Mean of the stable prefix: stop at the first sample that dips below
    // dip_threshold of the running prefix mean.
    double sum = 0;
    std::size_t n = 0;
    for (const PerfSample& s : series.samples) {
        if (n > 0 && s.value < dip_threshold * (sum / static_cast<double>(n))) break;
        sum += s.value;
        ++n;
    }
    double q0 = n > 0 ? sum / static_cast<double>(n) : 0;
    if (q0 <= 0) {
        // Degenerate leading sample; fall back to the overall mean.
        sum = 0;
        for (const PerfSample& s : series.samples) sum += s.value;
        q0 = sum / static_cast<double>(series.samples.size());
    }
    if (q0 <= 0) throw Error(Errc::no_baseline, "series has no positive baseline level");
    series.baseline = q0;
    return series;
}

}  // namespace airel::ingest
