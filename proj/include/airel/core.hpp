#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "airel/errors.hpp"

namespace airel {

// Failure-source taxonomy. Every incident is attributed to exactly one tag;
// `unknown` is the non-strict fallback for unclassifiable components.
enum class Subsystem { data, model, compute, code_software, human, unknown };

inline constexpr Subsystem kNamedSubsystems[] = {
    Subsystem::data, Subsystem::model, Subsystem::compute,
    Subsystem::code_software, Subsystem::human,
};

const char* subsystem_name(Subsystem s);
std::optional<Subsystem> subsystem_from_name(const std::string& name);

// Seconds since the Unix epoch, UTC. Sub-second precision is truncated at
// parse time.
using UtcSeconds = std::int64_t;

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kSecondsPerHour = 3600.0;

// Parses RFC 3339 timestamps restricted to the Zulu form
// YYYY-MM-DDTHH:MM:SS[.fraction]Z; also accepts a bare date as midnight.
UtcSeconds parse_timestamp(const std::string& text);
std::string format_timestamp(UtcSeconds t);

struct Incident {
    std::string id;
    std::string component;
    Subsystem subsystem = Subsystem::unknown;
    UtcSeconds start = 0;
    std::optional<UtcSeconds> end;  // empty = still open (censored)
    int severity = 5;               // 1..10
    std::string failure_mode;
    std::string root_cause;
    std::string description;

    bool operator==(const Incident&) const = default;
};

struct Window {
    UtcSeconds start = 0;
    UtcSeconds end = 0;

    double days() const { return static_cast<double>(end - start) / kSecondsPerDay; }
    bool operator==(const Window&) const = default;
};

// Validated, canonically ordered incident collection. Construction goes
// through validate_store so every instance satisfies the ordering and
// window invariants.
class IncidentStore {
public:
    const std::vector<Incident>& incidents() const { return incidents_; }
    const Window& window() const { return window_; }
    std::size_t size() const { return incidents_.size(); }
    bool empty() const { return incidents_.empty(); }

    bool operator==(const IncidentStore&) const = default;

private:
    friend IncidentStore validate_store(std::vector<Incident> incidents, Window window);
    IncidentStore(std::vector<Incident> incidents, Window window)
        : incidents_(std::move(incidents)), window_(window) {}

    std::vector<Incident> incidents_;
    Window window_;
};

// Checks ids unique, severity in 1..10, start within the window, end (when
// present) not before start; sorts by start then id. Throws ValidationError
// listing every violation.
IncidentStore validate_store(std::vector<Incident> incidents, Window window);

// Filters used by the CLI and the report builders. Empty component = keep all.
IncidentStore filter_store(const IncidentStore& store,
                           const std::optional<Subsystem>& subsystem,
                           const std::string& component = "");

struct Downtime {
    double hours = 0;
    bool censored = false;  // open incident clipped at the window end
};

// Duration of one incident. Open incidents are censored at the window end
// and flagged; callers decide whether censored values enter their means.
Downtime incident_downtime(const Incident& inc, const Window& window);

enum class DowntimePolicy { exclude_open, include_censored };

struct PerfSample {
    UtcSeconds t = 0;
    double value = 0;

    bool operator==(const PerfSample&) const = default;
};

// Evenly or unevenly sampled quality/performance signal with a baseline
// level q0 and optional release markers (deployment annotations).
struct PerformanceSeries {
    std::vector<PerfSample> samples;    // strictly increasing t
    double baseline = 0;                // q0 > 0
    std::vector<UtcSeconds> releases;   // sorted

    bool operator==(const PerformanceSeries&) const = default;
};

}  // namespace airel
