#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace airel {

// Machine-readable failure categories surfaced by every module. The CLI maps
// Error (and subclasses) to exit code 1 and NumericError to exit code 2.
enum class Errc {
    // core / ingest
    duplicate_id,
    out_of_window,
    end_before_start,
    severity_range,
    malformed_row,
    bad_timestamp,
    unknown_subsystem,
    bad_rule,
    non_monotonic_time,
    negative_value,
    no_baseline,
    // metrics
    empty_store,
    empty_group,
    out_of_range,
    negative_input,
    zero_demands,
    failures_exceed_demands,
    zero_mttr,
    zero_mtbf,
    empty_input,
    nonpositive_gap,
    window_too_large,
    // fitting / alt
    too_few_samples,
    degenerate_samples,
    no_convergence,
    too_few_events,
    epoch_out_of_range,
    domain_error,
    bad_shape_order,
    too_few_stress_levels,
    negative_rate,
    all_zero_likelihood,
    bad_grid,
    // drift
    window_too_small,
    bad_alpha,
    // resilience
    no_episode,
    insufficient_tail,
    bad_threshold,
    // fmea
    score_out_of_range,
    unmapped_failure_mode,
    // simulator
    bad_sim_config,
    // cli / io
    bad_config,
    io_error,
    unknown_subcommand,
    bad_argument,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

// Numerical failure inside an algorithm that received valid input.
class NumericError : public Error {
public:
    using Error::Error;
};

struct ValidationIssue {
    Errc code;
    std::string subject;  // incident id, line number, or field name
    std::string message;
};

// Carries every violation found in one pass, not just the first.
class ValidationError : public Error {
public:
    ValidationError(std::vector<ValidationIssue> issues, const std::string& summary)
        : Error(issues.empty() ? Errc::malformed_row : issues.front().code, summary),
          issues_(std::move(issues)) {}

    const std::vector<ValidationIssue>& issues() const { return issues_; }

private:
    std::vector<ValidationIssue> issues_;
};

}  // namespace airel
