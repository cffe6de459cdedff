#pragma once

/// @file io.hpp
/// @brief Line-oriented text format for mall instances.
///
/// ```
/// mall-instance 1
/// areas <A> locations <L> types <T> groups <G>
/// area_of <a_0> ... <a_(L-1)>
/// size_rent <small> <medium> <large>
/// size_limits <small> <medium> <large>
/// synergy <bonus>
/// type <min> <ideal> <max> <count_peak> <count_slope> <group bitmask>   T lines
/// attract <T values>                                                   A lines
/// fixed_rent <A values>                                                T lines
/// ```
/// Reals are written in shortest round-trip form, so save/load is lossless.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <pga/core/text_io.hpp>
#include <pga/mall/instance.hpp>

namespace pga::mall {

inline void write_instance(std::ostream& out, const MallInstance& inst) {
    using io::format_double;
    const std::size_t T = inst.type_count();
    out << "mall-instance 1\n";
    out << "areas " << inst.areas << " locations " << inst.locations() << " types " << T << " groups "
        << inst.group_count << '\n';
    out << "area_of";
    for (auto a : inst.area_of) {
        out << ' ' << a;
    }
    out << "\nsize_rent";
    for (double v : inst.size_rent) {
        out << ' ' << format_double(v);
    }
    out << "\nsize_limits";
    for (int v : inst.size_limits) {
        out << ' ' << v;
    }
    out << "\nsynergy " << format_double(inst.synergy) << '\n';
    for (const auto& t : inst.types) {
        out << "type " << t.min_count << ' ' << t.ideal_count << ' ' << t.max_count << ' '
            << format_double(t.count_peak) << ' ' << format_double(t.count_slope) << ' ' << t.groups << '\n';
    }
    for (std::size_t a = 0; a < inst.areas; ++a) {
        out << "attract";
        for (std::size_t t = 0; t < T; ++t) {
            out << ' ' << format_double(inst.attract_at(a, t));
        }
        out << '\n';
    }
    for (std::size_t t = 0; t < T; ++t) {
        out << "fixed_rent";
        for (std::size_t a = 0; a < inst.areas; ++a) {
            out << ' ' << format_double(inst.fixed_at(t, a));
        }
        out << '\n';
    }
}

[[nodiscard]] inline MallInstance read_instance(std::istream& in) {
    io::TokenReader r(in);
    r.expect("mall-instance");
    if (r.number<int>("format version") != 1) {
        throw std::runtime_error("unsupported mall instance version");
    }
    MallInstance inst;
    r.expect("areas");
    inst.areas = r.number<std::size_t>("area count");
    r.expect("locations");
    const auto L = r.number<std::size_t>("location count");
    r.expect("types");
    const auto T = r.number<std::size_t>("type count");
    r.expect("groups");
    inst.group_count = r.number<std::size_t>("group count");
    r.expect("area_of");
    inst.area_of.resize(L);
    for (auto& a : inst.area_of) {
        a = r.number<std::size_t>("area index");
    }
    r.expect("size_rent");
    for (double& v : inst.size_rent) {
        v = r.number<double>("size rent");
    }
    r.expect("size_limits");
    for (int& v : inst.size_limits) {
        v = r.number<int>("size limit");
    }
    r.expect("synergy");
    inst.synergy = r.number<double>("synergy");
    inst.types.resize(T);
    for (auto& t : inst.types) {
        r.expect("type");
        t.min_count = r.number<int>("min count");
        t.ideal_count = r.number<int>("ideal count");
        t.max_count = r.number<int>("max count");
        t.count_peak = r.number<double>("count peak");
        t.count_slope = r.number<double>("count slope");
        t.groups = r.number<std::uint32_t>("group mask");
    }
    inst.attract.resize(inst.areas * T);
    for (std::size_t a = 0; a < inst.areas; ++a) {
        r.expect("attract");
        for (std::size_t t = 0; t < T; ++t) {
            inst.attract[a * T + t] = r.number<double>("attractiveness");
        }
    }
    inst.fixed_rent.resize(T * inst.areas);
    for (std::size_t t = 0; t < T; ++t) {
        r.expect("fixed_rent");
        for (std::size_t a = 0; a < inst.areas; ++a) {
            inst.fixed_rent[t * inst.areas + a] = r.number<double>("fixed rent");
        }
    }
    finalize(inst);
    return inst;
}

inline void save_instance(const std::string& path, const MallInstance& inst) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    write_instance(out, inst);
}

[[nodiscard]] inline MallInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    return read_instance(in);
}

[[nodiscard]] inline std::string to_text(const MallInstance& inst) {
    std::ostringstream os;
    write_instance(os, inst);
    return os.str();
}

} // namespace pga::mall
