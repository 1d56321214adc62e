#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "airel/errors.hpp"

namespace airel::report {

// Column display hints for the human renderers. JSON always carries the
// exact value alongside a 6-significant-digit reading.
enum class ColumnFormat { text, integer, days, one_decimal, sig6 };

struct Cell {
    std::variant<std::string, double, std::int64_t> value;

    static Cell text(std::string s) { return {std::move(s)}; }
    static Cell real(double v) { return {v}; }
    static Cell integer(std::int64_t v) { return {v}; }
    // Undefined-marker (e.g. MTBF of a zero-failure group).
    static Cell none() { return {std::string("-")}; }
};

struct Table {
    std::string name;    // stable key for machine output
    std::string caption;
    std::vector<std::string> columns;
    std::vector<ColumnFormat> formats;  // one per column
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> heat;      // per row: "", "red", "yellow", "green"
};

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct Report {
    std::string title;
    std::string generated_at;  // injected for reproducible output
    std::vector<Table> tables;
    std::vector<Series> series;
};

// Markdown: one pipe table per Table, heat tags appended as a final column
// when present.
std::string render_markdown(const Report& report);

// Canonical machine form: stable key order, reals as {"value": 6-significant
// digits, "exact": shortest round-trip}. render/parse round-trips exactly.
std::string render_json(const Report& report);
Report report_from_json(const std::string& text);

// One `# table <name>` section per table, then `# series <name>` sections.
std::string render_csv(const Report& report);

// Writes <prefix>_<series>.csv per series plus <prefix>.svg with a minimal
// line rendering (axes, one polyline per series). Throws io_error naming the
// path on failure.
void export_plot_series(const Report& report, const std::string& prefix);

// Heat banding for MTBF day-counts (green when long, red when short).
struct MtbfHeat {
    double green_min = 80;
    double red_max = 15;
};

std::string heat_for_mtbf(std::optional<double> mtbf_days, const MtbfHeat& heat = {});

}  // namespace airel::report
