#include "airel/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "airel/numeric.hpp"

namespace airel::report {

namespace {

using ordered_json = nlohmann::ordered_json;

// Shortest representation that parses back to the same double.
std::string exact_repr(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string sig6_repr(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* format_name(ColumnFormat f) {
    switch (f) {
        case ColumnFormat::text: return "text";
        case ColumnFormat::integer: return "integer";
        case ColumnFormat::days: return "days";
        case ColumnFormat::one_decimal: return "one_decimal";
        case ColumnFormat::sig6: return "sig6";
    }
    return "text";
}

ColumnFormat format_from_name(const std::string& name) {
    if (name == "text") return ColumnFormat::text;
    if (name == "integer") return ColumnFormat::integer;
    if (name == "days") return ColumnFormat::days;
    if (name == "one_decimal") return ColumnFormat::one_decimal;
    if (name == "sig6") return ColumnFormat::sig6;
    throw Error(Errc::malformed_row, "unknown column format '" + name + "'");
}

std::string render_cell(const Cell& cell, ColumnFormat format) {
    if (const auto* s = std::get_if<std::string>(&cell.value)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&cell.value)) return std::to_string(*i);
    double v = std::get<double>(cell.value);
    char buf[40];
    switch (format) {
        case ColumnFormat::days:
        case ColumnFormat::integer:
            std::snprintf(buf, sizeof buf, "%.0f", numeric::round_half_away(v));
            return buf;
        case ColumnFormat::one_decimal:
            std::snprintf(buf, sizeof buf, "%.1f", v);
            return buf;
        default:
            return sig6_repr(v);
    }
}

}  // namespace

std::string render_markdown(const Report& report) {
    std::ostringstream out;
    out << "# " << report.title << "\n\n";
    if (!report.generated_at.empty()) out << "Generated at " << report.generated_at << "\n\n";
    for (const Table& table : report.tables) {
        out << "## " << table.caption << "\n\n";
        bool with_heat = !table.heat.empty();
        out << "|";
        for (const std::string& col : table.columns) out << " " << col << " |";
        if (with_heat) out << " Heat |";
        out << "\n|";
        for (std::size_t i = 0; i < table.columns.size() + (with_heat ? 1 : 0); ++i) out << " --- |";
        out << "\n";
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            out << "|";
            for (std::size_t c = 0; c < table.rows[r].size(); ++c)
                out << " " << render_cell(table.rows[r][c], table.formats[c]) << " |";
            if (with_heat) out << " " << table.heat[r] << " |";
            out << "\n";
        }
        out << "\n";
    }
    for (const Series& s : report.series) {
        out << "## Series: " << s.name << " (" << s.x.size() << " points)\n\n";
    }
    return out.str();
}

namespace {

ordered_json cell_to_json(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell.value)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&cell.value)) return *i;
    double v = std::get<double>(cell.value);
    ordered_json j;
    j["value"] = std::stod(sig6_repr(v));
    j["exact"] = v;
    return j;
}

Cell cell_from_json(const ordered_json& j) {
    if (j.is_string()) return Cell::text(j.get<std::string>());
    if (j.is_number_integer()) return Cell::integer(j.get<std::int64_t>());
    if (j.is_object()) return Cell::real(j.at("exact").get<double>());
    throw Error(Errc::malformed_row, "unrecognized cell encoding");
}

}  // namespace

std::string render_json(const Report& report) {
    ordered_json j;
    j["title"] = report.title;
    j["generated_at"] = report.generated_at;
    j["tables"] = ordered_json::array();
    for (const Table& table : report.tables) {
        ordered_json t;
        t["name"] = table.name;
        t["caption"] = table.caption;
        t["columns"] = table.columns;
        t["formats"] = ordered_json::array();
        for (ColumnFormat f : table.formats) t["formats"].push_back(format_name(f));
        t["rows"] = ordered_json::array();
        for (const auto& row : table.rows) {
            ordered_json r = ordered_json::array();
            for (const Cell& cell : row) r.push_back(cell_to_json(cell));
            t["rows"].push_back(std::move(r));
        }
        t["heat"] = table.heat;
        j["tables"].push_back(std::move(t));
    }
    j["series"] = ordered_json::array();
    for (const Series& s : report.series) {
        ordered_json e;
        e["name"] = s.name;
        e["x"] = s.x;
        e["y"] = s.y;
        j["series"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw Error(Errc::malformed_row, std::string("report JSON: ") + e.what());
    }
    try {
        Report report;
        report.title = j.at("title").get<std::string>();
        report.generated_at = j.at("generated_at").get<std::string>();
        for (const auto& t : j.at("tables")) {
            Table table;
            table.name = t.at("name").get<std::string>();
            table.caption = t.at("caption").get<std::string>();
            table.columns = t.at("columns").get<std::vector<std::string>>();
            for (const auto& f : t.at("formats"))
                table.formats.push_back(format_from_name(f.get<std::string>()));
            for (const auto& r : t.at("rows")) {
                std::vector<Cell> row;
                for (const auto& c : r) row.push_back(cell_from_json(c));
                table.rows.push_back(std::move(row));
            }
            table.heat = t.at("heat").get<std::vector<std::string>>();
            report.tables.push_back(std::move(table));
        }
        for (const auto& s : j.at("series")) {
            Series series;
            series.name = s.at("name").get<std::string>();
            series.x = s.at("x").get<std::vector<double>>();
            series.y = s.at("y").get<std::vector<double>>();
            report.series.push_back(std::move(series));
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::malformed_row, std::string("report JSON: ") + e.what());
    }
}

std::string render_csv(const Report& report) {
    std::ostringstream out;
    auto csv_quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += "\"\"";
            else q.push_back(c);
        }
        return q + "\"";
    };
    for (const Table& table : report.tables) {
        out << "# table " << table.name << "\n";
        bool with_heat = !table.heat.empty();
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out << ",";
            out << csv_quote(table.columns[c]);
        }
        if (with_heat) out << ",heat";
        out << "\n";
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
                if (c) out << ",";
                const Cell& cell = table.rows[r][c];
                if (const auto* d = std::get_if<double>(&cell.value))
                    out << exact_repr(*d);
                else
                    out << csv_quote(render_cell(cell, ColumnFormat::text));
            }
            if (with_heat) out << "," << table.heat[r];
            out << "\n";
        }
        out << "\n";
    }
    for (const Series& s : report.series) {
        out << "# series " << s.name << "\n";
        out << "x,y\n";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << exact_repr(s.x[i]) << "," << exact_repr(s.y[i]) << "\n";
        out << "\n";
    }
    return out.str();
}

namespace {

std::string svg_render(const Report& report) {
    const double width = 800, height = 500;
    const double ml = 70, mr = 20, mt = 40, mb = 50;
    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    bool first = true;
    for (const Series& s : report.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (first) {
                x_min = x_max = s.x[i];
                y_min = y_max = s.y[i];
                first = false;
            }
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            y_min = std::min(y_min, s.y[i]);
            y_max = std::max(y_max, s.y[i]);
        }
    }
    if (x_max == x_min) x_max = x_min + 1;
    if (y_max == y_min) y_max = y_min + 1;
    auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * (width - ml - mr); };
    auto sy = [&](double y) { return height - mb - (y - y_min) / (y_max - y_min) * (height - mt - mb); };

    static const char* palette[] = {"#4c6ef5", "#e8b339", "#37b24d", "#e64980", "#868e96"};
    std::ostringstream out;
    char buf[160];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n";
    out << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", ml,
                  height - mb, width - mr, height - mb);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", ml,
                  mt, ml, height - mb);
    out << buf;
    for (int k = 0; k <= 4; ++k) {
        double xv = x_min + (x_max - x_min) * k / 4;
        double yv = y_min + (y_max - y_min) * k / 4;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"middle\">%s</text>\n",
                      sx(xv), height - mb + 16, sig6_repr(xv).c_str());
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"end\">%s</text>\n",
                      ml - 6, sy(yv) + 4, sig6_repr(yv).c_str());
        out << buf;
    }
    std::size_t color = 0;
    for (const Series& s : report.series) {
        out << "<polyline fill=\"none\" stroke=\"" << palette[color % 5] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(s.x[i]), sy(s.y[i]));
            out << buf;
        }
        out << "\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" fill=\"%s\">%s</text>\n",
                      ml + 8, mt + 14 + 16 * static_cast<double>(color), palette[color % 5],
                      s.name.c_str());
        out << buf;
        ++color;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"14\" text-anchor=\"middle\">%s</text>\n",
                  width / 2, mt - 14, report.title.c_str());
    out << buf;
    out << "</svg>\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error(Errc::io_error, "failed writing '" + path + "'");
}

std::string slug(const std::string& name) {
    std::string s;
    for (char c : name)
        s.push_back((std::isalnum(static_cast<unsigned char>(c)) != 0) ? c : '_');
    return s;
}

}  // namespace

void export_plot_series(const Report& report, const std::string& prefix) {
    for (const Series& s : report.series) {
        std::ostringstream csv;
        csv << "x,y\n";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            csv << exact_repr(s.x[i]) << "," << exact_repr(s.y[i]) << "\n";
        write_file(prefix + "_" + slug(s.name) + ".csv", csv.str());
    }
    write_file(prefix + ".svg", svg_render(report));
}

std::string heat_for_mtbf(std::optional<double> mtbf_days, const MtbfHeat& heat) {
    if (!mtbf_days) return "";
    if (*mtbf_days >= heat.green_min) return "green";
    if (*mtbf_days <= heat.red_max) return "red";
    return "yellow";
}

}  // namespace airel::report
