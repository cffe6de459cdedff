#pragma once

/// @file results.hpp
/// @brief Result rows and their CSV / JSON emission, parsing and strategy pivot.

#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include <pga/core/text_io.hpp>

namespace pga::harness {

struct ResultRow {
    std::string instance;
    std::string strategy;
    double feasibility = 0.0;
    double score = 0.0;
    double generations = 0.0;
    double seconds = 0.0;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

enum class Format { csv, json };

[[nodiscard]] inline Format parse_format(std::string_view s) {
    if (s == "csv") {
        return Format::csv;
    }
    if (s == "json") {
        return Format::json;
    }
    throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

inline constexpr std::string_view kCsvHeader = "instance,strategy,feasibility,score,generations,seconds";

namespace detail {

inline void check_field(std::string_view field) {
    if (field.find_first_of(",\"\n\r") != std::string_view::npos) {
        throw std::invalid_argument("field contains a CSV delimiter: " + std::string(field));
    }
}

inline double parse_number(const std::string& s) {
    std::istringstream in(s);
    io::TokenReader r(in);
    return r.number<double>("result value");
}

} // namespace detail

inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    using io::format_double;
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        detail::check_field(r.instance);
        detail::check_field(r.strategy);
        out << r.instance << ',' << r.strategy << ',' << format_double(r.feasibility) << ','
            << format_double(r.score) << ',' << format_double(r.generations) << ',' << format_double(r.seconds)
            << '\n';
    }
}

[[nodiscard]] inline std::vector<ResultRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("missing or unexpected CSV header");
    }
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            f.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (f.size() != 6) {
            throw std::runtime_error("CSV row needs 6 fields: " + line);
        }
        rows.push_back({f[0], f[1], detail::parse_number(f[2]), detail::parse_number(f[3]),
                        detail::parse_number(f[4]), detail::parse_number(f[5])});
    }
    return rows;
}

[[nodiscard]] inline nlohmann::ordered_json to_json(const std::vector<ResultRow>& rows) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["instance"] = r.instance;
        o["strategy"] = r.strategy;
        o["feasibility"] = r.feasibility;
        o["score"] = r.score;
        o["generations"] = r.generations;
        o["seconds"] = r.seconds;
        arr.push_back(std::move(o));
    }
    return arr;
}

inline void write_json(std::ostream& out, const std::vector<ResultRow>& rows) { out << to_json(rows).dump(2) << '\n'; }

[[nodiscard]] inline std::vector<ResultRow> read_json(std::istream& in) {
    const auto doc = nlohmann::json::parse(in);
    std::vector<ResultRow> rows;
    for (const auto& o : doc) {
        rows.push_back({o.at("instance").get<std::string>(), o.at("strategy").get<std::string>(),
                        o.at("feasibility").get<double>(), o.at("score").get<double>(),
                        o.at("generations").get<double>(), o.at("seconds").get<double>()});
    }
    return rows;
}

inline void write_rows(std::ostream& out, const std::vector<ResultRow>& rows, Format f) {
    if (f == Format::csv) {
        write_csv(out, rows);
    } else {
        write_json(out, rows);
    }
}

inline void save_rows(const std::string& path, const std::vector<ResultRow>& rows, Format f) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    write_rows(out, rows, f);
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

[[nodiscard]] inline std::vector<ResultRow> load_rows(const std::string& path, Format f) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    return f == Format::csv ? read_csv(in) : read_json(in);
}

/// Strategy x {score, feasibility} table from the summary rows (instance == `summary`), in row order.
[[nodiscard]] inline std::vector<ResultRow> pivot_rows(const std::vector<ResultRow>& rows,
                                                       std::string_view summary = "mean") {
    std::vector<ResultRow> out;
    for (const auto& r : rows) {
        if (r.instance == summary) {
            out.push_back(r);
        }
    }
    return out;
}

/// Plain-text table: method, score, feasibility in percent.
inline void write_pivot(std::ostream& out, const std::vector<ResultRow>& rows, std::string_view score_label,
                        std::string_view summary = "mean") {
    out << "method  " << score_label << "  feasibility\n";
    for (const auto& r : pivot_rows(rows, summary)) {
        std::ostringstream score;
        score.setf(std::ios::fixed);
        score.precision(1);
        score << r.score;
        std::ostringstream feas;
        feas.setf(std::ios::fixed);
        feas.precision(0);
        feas << r.feasibility * 100.0 << '%';
        out << r.strategy << "  " << score.str() << "  " << feas.str() << '\n';
    }
}

} // namespace pga::harness
