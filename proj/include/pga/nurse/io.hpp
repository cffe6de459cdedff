#pragma once

/// @file io.hpp
/// @brief Line-oriented text format for nurse instances.
///
/// ```
/// nurse-instance 1
/// nurses <n> patterns <m> grades <p>
/// patterns
/// <cover bitmask 0..16383> <day|night|combined>      m lines
/// demand
/// <R_k1> ... <R_kp>                                   14 lines, periods 1..7 days then 8..14 nights
/// nurse <grade> <D> <N> <B>                           n blocks
/// feasible <count> <j> ...
/// costs <p_i0> ... <p_i(m-1)>
/// ```
/// The feasible list is redundant with the contract and is checked on load.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <pga/core/text_io.hpp>
#include <pga/nurse/instance.hpp>

namespace pga::nurse {

inline void write_instance(std::ostream& out, const NurseInstance& inst) {
    out << "nurse-instance 1\n";
    out << "nurses " << inst.n() << " patterns " << inst.m() << " grades " << inst.grades << "\n";
    out << "patterns\n";
    for (const auto& p : inst.patterns) {
        const char* kind = p.kind == PatternKind::day ? "day" : p.kind == PatternKind::night ? "night" : "combined";
        out << p.cover << ' ' << kind << '\n';
    }
    out << "demand\n";
    for (std::size_t k = 0; k < kPeriods; ++k) {
        for (std::size_t s = 0; s < inst.grades; ++s) {
            out << (s ? " " : "") << inst.demand[k * inst.grades + s];
        }
        out << '\n';
    }
    for (std::size_t i = 0; i < inst.n(); ++i) {
        const auto& c = inst.contracts[i];
        out << "nurse " << inst.grade_of[i] << ' ' << c.day_shifts << ' ' << c.night_shifts << ' '
            << c.combined_shifts << '\n';
        out << "feasible " << inst.feasible_sets[i].size();
        for (Gene j : inst.feasible_sets[i]) {
            out << ' ' << j;
        }
        out << "\ncosts";
        for (std::size_t j = 0; j < inst.m(); ++j) {
            out << ' ' << inst.pref_cost[i * inst.m() + j];
        }
        out << '\n';
    }
}

[[nodiscard]] inline NurseInstance read_instance(std::istream& in) {
    io::TokenReader r(in);
    r.expect("nurse-instance");
    if (r.number<int>("format version") != 1) {
        throw std::runtime_error("unsupported nurse instance version");
    }
    NurseInstance inst;
    r.expect("nurses");
    const auto n = r.number<std::size_t>("nurse count");
    r.expect("patterns");
    const auto m = r.number<std::size_t>("pattern count");
    r.expect("grades");
    inst.grades = r.number<std::size_t>("grade count");
    if (inst.grades == 0 || inst.grades > kMaxGrades) {
        throw std::runtime_error("grade count out of range");
    }
    r.expect("patterns");
    inst.patterns.resize(m);
    for (auto& p : inst.patterns) {
        p.cover = r.number<std::uint16_t>("pattern cover");
        const auto kind = r.next("pattern kind");
        if (kind == "day") {
            p.kind = PatternKind::day;
        } else if (kind == "night") {
            p.kind = PatternKind::night;
        } else if (kind == "combined") {
            p.kind = PatternKind::combined;
        } else {
            throw std::runtime_error("unknown pattern kind '" + kind + "'");
        }
    }
    r.expect("demand");
    inst.demand.resize(kPeriods * inst.grades);
    for (auto& d : inst.demand) {
        d = r.number<int>("demand");
    }
    inst.grade_of.resize(n);
    inst.contracts.resize(n);
    inst.pref_cost.resize(n * m);
    std::vector<std::vector<Gene>> listed(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.expect("nurse");
        inst.grade_of[i] = r.number<int>("grade");
        inst.contracts[i].day_shifts = r.number<int>("day shifts");
        inst.contracts[i].night_shifts = r.number<int>("night shifts");
        inst.contracts[i].combined_shifts = r.number<int>("combined shifts");
        r.expect("feasible");
        listed[i].resize(r.number<std::size_t>("feasible count"));
        for (auto& j : listed[i]) {
            j = r.number<Gene>("feasible pattern");
        }
        r.expect("costs");
        for (std::size_t j = 0; j < m; ++j) {
            inst.pref_cost[i * m + j] = r.number<int>("preference cost");
        }
    }
    finalize(inst);
    if (listed != inst.feasible_sets) {
        throw std::runtime_error("feasible pattern lists disagree with contracts");
    }
    return inst;
}

inline void save_instance(const std::string& path, const NurseInstance& inst) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    write_instance(out, inst);
}

[[nodiscard]] inline NurseInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    return read_instance(in);
}

[[nodiscard]] inline std::string to_text(const NurseInstance& inst) {
    std::ostringstream os;
    write_instance(os, inst);
    return os.str();
}

} // namespace pga::nurse
