#pragma once

/// @file topology.hpp
/// @brief The pyramid: which problem slots each level covers, who feeds whom, who completes whom.
///
/// Every level owns an explicit slot list (its gene order). A level's slots are a
/// union of contiguous segments of the global slot order, so a level such as
/// grades {3+1} is two fixed segments rather than one contiguous block.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <pga/core/genome.hpp>
#include <pga/mall/instance.hpp>
#include <pga/nurse/instance.hpp>

namespace pga {

/// Which substitute fitness a level uses when evaluated on its own.
enum class SubFitness {
    full,        ///< complete problem fitness
    restricted,  ///< nurse grade subset, substitution only inside the subset
    grade_blind, ///< nurse full string against total staff demand
    area,        ///< mall area-local rent
};

struct LevelSpec {
    LevelId level_id = 0;
    std::string name;
    /// Problem slot indices in gene order.
    std::vector<std::size_t> slots;
    /// Grades (nurse, 1-based) or areas (mall, 0-based) covered by the level.
    std::vector<int> groups;
    std::size_t capacity = 0;
    std::vector<LevelId> crossover_sources;
    std::vector<LevelId> evaluation_complements;
    SubFitness fitness = SubFitness::full;
    bool is_top = false;
};

class Topology {
  public:
    static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

    Topology() = default;

    Topology(std::vector<LevelSpec> levels, std::vector<std::size_t> slot_order)
        : levels_(std::move(levels)), slot_order_(std::move(slot_order)) {
        build_tables();
        validate();
    }

    [[nodiscard]] std::span<const LevelSpec> levels() const noexcept { return levels_; }
    [[nodiscard]] const LevelSpec& level(LevelId id) const {
        if (id >= levels_.size()) {
            throw std::out_of_range("unknown level");
        }
        return levels_[id];
    }
    [[nodiscard]] std::size_t size() const noexcept { return levels_.size(); }
    [[nodiscard]] std::span<const std::size_t> slot_order() const noexcept { return slot_order_; }
    [[nodiscard]] std::size_t slot_count() const noexcept { return slot_order_.size(); }
    [[nodiscard]] LevelId top() const noexcept { return top_; }
    [[nodiscard]] std::size_t total_capacity() const noexcept {
        std::size_t s = 0;
        for (const auto& l : levels_) {
            s += l.capacity;
        }
        return s;
    }

    /// Gene index of problem slot `slot` within level `id`, or npos.
    [[nodiscard]] std::uint32_t position(LevelId id, std::size_t slot) const {
        return positions_[id * slot_count() + slot];
    }

    /// Contiguous runs of the level's slots in the global slot order, as
    /// [begin, end) positions of slot_order.
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> segments(LevelId id) const {
        std::vector<std::pair<std::size_t, std::size_t>> segs;
        for (std::size_t slot : level(id).slots) {
            const std::size_t p = order_pos_[slot];
            if (!segs.empty() && segs.back().second == p) {
                ++segs.back().second;
            } else {
                segs.emplace_back(p, p + 1);
            }
        }
        return segs;
    }

    [[nodiscard]] bool is_bottom(LevelId id) const { return level(id).crossover_sources.empty(); }

  private:
    void build_tables() {
        const std::size_t n = slot_order_.size();
        order_pos_.assign(n, 0);
        std::vector<bool> seen(n, false);
        for (std::size_t p = 0; p < n; ++p) {
            const std::size_t s = slot_order_[p];
            if (s >= n || seen[s]) {
                throw std::invalid_argument("slot order is not a permutation");
            }
            seen[s] = true;
            order_pos_[s] = p;
        }
        positions_.assign(levels_.size() * n, npos);
        for (std::size_t id = 0; id < levels_.size(); ++id) {
            if (levels_[id].level_id != id) {
                throw std::invalid_argument("level ids must be dense and ordered");
            }
            const auto& slots = levels_[id].slots;
            for (std::size_t idx = 0; idx < slots.size(); ++idx) {
                if (slots[idx] >= n || positions_[id * n + slots[idx]] != npos) {
                    throw std::invalid_argument("level slot list invalid");
                }
                positions_[id * n + slots[idx]] = static_cast<std::uint32_t>(idx);
            }
        }
    }

    [[nodiscard]] bool contains(LevelId outer, LevelId inner) const {
        for (std::size_t s : levels_[inner].slots) {
            if (position(outer, s) == npos) {
                return false;
            }
        }
        return true;
    }

    void validate() {
        const std::size_t n = slot_count();
        std::size_t tops = 0;
        for (const auto& l : levels_) {
            if (l.capacity == 0) {
                throw std::invalid_argument("level capacity must be positive");
            }
            if (l.is_top) {
                ++tops;
                top_ = l.level_id;
                if (l.slots.size() != n) {
                    throw std::invalid_argument("top level must cover every slot");
                }
            }
            for (LevelId src : l.crossover_sources) {
                if (src >= levels_.size() || src == l.level_id || !contains(l.level_id, src)) {
                    throw std::invalid_argument("crossover source is not nested in level " + l.name);
                }
                // equal slot sets are tolerated: an empty grade makes {2+3} equal {3}
            }
            // own slots plus complement slots partition the full slot set
            std::vector<int> hits(n, 0);
            for (std::size_t s : l.slots) {
                ++hits[s];
            }
            for (LevelId c : l.evaluation_complements) {
                if (c >= levels_.size()) {
                    throw std::invalid_argument("unknown complement level");
                }
                for (std::size_t s : levels_[c].slots) {
                    ++hits[s];
                }
            }
            if (!l.evaluation_complements.empty() || l.slots.size() == n) {
                for (int h : hits) {
                    if (h != 1) {
                        throw std::invalid_argument("evaluation complements of level " + l.name +
                                                    " do not partition the slots");
                    }
                }
            }
        }
        if (tops != 1) {
            throw std::invalid_argument("topology needs exactly one top level");
        }
    }

    std::vector<LevelSpec> levels_;
    std::vector<std::size_t> slot_order_;
    std::vector<std::size_t> order_pos_;
    std::vector<std::uint32_t> positions_;
    LevelId top_ = 0;
};

struct TopologyCapacities {
    std::size_t lower = 100;
    std::size_t top = 0; ///< 0 selects the problem default (nurse 300, mall 500, single 1000)
};

namespace detail {

inline std::vector<std::size_t> concat_groups(const std::vector<std::vector<std::size_t>>& blocks,
                                              std::initializer_list<int> ids, int base) {
    std::vector<std::size_t> out;
    for (int g : ids) {
        const auto& b = blocks[static_cast<std::size_t>(g - base)];
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

} // namespace detail

/// Eight-level nurse pyramid: {1},{2},{3},{1+2},{2+3},{3+1},{1+2+3}, all.
[[nodiscard]] inline Topology build_nurse_topology(const nurse::NurseInstance& inst, TopologyCapacities caps = {}) {
    if (inst.grades != 3) {
        throw std::invalid_argument("nurse topology requires three grades");
    }
    const std::size_t top_cap = caps.top == 0 ? 300 : caps.top;
    std::vector<std::vector<std::size_t>> blocks(3);
    for (std::size_t i = 0; i < inst.n(); ++i) {
        blocks[static_cast<std::size_t>(inst.grade_of[i] - 1)].push_back(i);
    }
    auto slot_order = detail::concat_groups(blocks, {1, 2, 3}, 1);

    auto make = [&](LevelId id, std::string name, std::initializer_list<int> grades, std::vector<LevelId> sources,
                    std::vector<LevelId> complements, SubFitness fit) {
        LevelSpec l;
        l.level_id = id;
        l.name = std::move(name);
        l.slots = detail::concat_groups(blocks, grades, 1);
        l.groups = grades;
        l.capacity = caps.lower;
        l.crossover_sources = std::move(sources);
        l.evaluation_complements = std::move(complements);
        l.fitness = fit;
        return l;
    };
    std::vector<LevelSpec> levels;
    levels.push_back(make(0, "1", {1}, {}, {4}, SubFitness::restricted));
    levels.push_back(make(1, "2", {2}, {}, {5}, SubFitness::restricted));
    levels.push_back(make(2, "3", {3}, {}, {3}, SubFitness::restricted));
    levels.push_back(make(3, "1+2", {1, 2}, {0, 1}, {2}, SubFitness::restricted));
    levels.push_back(make(4, "2+3", {2, 3}, {1, 2}, {0}, SubFitness::restricted));
    levels.push_back(make(5, "3+1", {3, 1}, {2, 0}, {1}, SubFitness::restricted));
    levels.push_back(make(6, "1+2+3", {1, 2, 3}, {0, 1, 2, 3, 4, 5}, {}, SubFitness::grade_blind));
    auto top = make(7, "all", {1, 2, 3}, {0, 1, 2, 3, 4, 5, 6}, {}, SubFitness::full);
    top.capacity = top_cap;
    top.is_top = true;
    levels.push_back(std::move(top));
    return Topology(std::move(levels), std::move(slot_order));
}

/// Two-level mall pyramid: one level per area plus the full layout.
[[nodiscard]] inline Topology build_mall_topology(const mall::MallInstance& inst, TopologyCapacities caps = {}) {
    if (inst.areas != 5) {
        throw std::invalid_argument("mall topology requires five areas");
    }
    const std::size_t top_cap = caps.top == 0 ? 500 : caps.top;
    std::vector<std::size_t> slot_order;
    std::vector<LevelSpec> levels;
    for (std::size_t a = 0; a < inst.areas; ++a) {
        const auto& locs = inst.area_locations.at(a);
        slot_order.insert(slot_order.end(), locs.begin(), locs.end());
        LevelSpec l;
        l.level_id = a;
        l.name = "area" + std::to_string(a + 1);
        l.slots = locs;
        l.groups = {static_cast<int>(a)};
        l.capacity = caps.lower;
        for (std::size_t b = 0; b < inst.areas; ++b) {
            if (b != a) {
                l.evaluation_complements.push_back(b);
            }
        }
        l.fitness = SubFitness::area;
        levels.push_back(std::move(l));
    }
    LevelSpec top;
    top.level_id = inst.areas;
    top.name = "all";
    top.slots = slot_order;
    for (std::size_t a = 0; a < inst.areas; ++a) {
        top.groups.push_back(static_cast<int>(a));
        top.crossover_sources.push_back(a);
    }
    top.capacity = top_cap;
    top.fitness = SubFitness::full;
    top.is_top = true;
    levels.push_back(std::move(top));
    return Topology(std::move(levels), std::move(slot_order));
}

/// Degenerate one-population topology (standard GA baseline).
[[nodiscard]] inline Topology build_single_topology(std::size_t slot_count, std::size_t capacity = 1000) {
    LevelSpec l;
    l.level_id = 0;
    l.name = "sga";
    l.slots.resize(slot_count);
    std::iota(l.slots.begin(), l.slots.end(), std::size_t{0});
    l.capacity = capacity;
    l.fitness = SubFitness::full;
    l.is_top = true;
    auto order = l.slots;
    return Topology({std::move(l)}, std::move(order));
}

/// Graft `lower` into `higher`: lower's slots come from lower, the rest from higher.
[[nodiscard]] inline Genome fixed_point_crossover(const Genome& lower, const Genome& higher, const Topology& topo) {
    const auto& lo = topo.level(lower.level_id);
    const auto& hi = topo.level(higher.level_id);
    if (lower.genes.size() != lo.slots.size() || higher.genes.size() != hi.slots.size()) {
        throw std::invalid_argument("incompatible genomes");
    }
    Genome child(higher.level_id, higher.genes);
    child.cell = higher.cell;
    for (std::size_t idx = 0; idx < lo.slots.size(); ++idx) {
        const auto pos = topo.position(higher.level_id, lo.slots[idx]);
        if (pos == Topology::npos) {
            throw std::invalid_argument("non-nested levels");
        }
        child.genes[pos] = lower.genes[idx];
    }
    return child;
}

[[nodiscard]] inline std::span<const LevelId> complement_levels(LevelId id, const Topology& topo) {
    return topo.level(id).evaluation_complements;
}

/// Write the genes of a level genome into a problem-ordered full solution.
inline void scatter(const Genome& g, const Topology& topo, std::span<Gene> full) {
    const auto& slots = topo.level(g.level_id).slots;
    for (std::size_t idx = 0; idx < slots.size(); ++idx) {
        full[slots[idx]] = g.genes[idx];
    }
}

[[nodiscard]] inline std::string describe(const Topology& topo) {
    std::ostringstream os;
    os << "level  name      slots  capacity  fitness      sources          complements\n";
    auto list = [](std::span<const LevelId> ids) {
        std::string s;
        for (auto id : ids) {
            if (!s.empty()) {
                s += ",";
            }
            s += std::to_string(id);
        }
        return s.empty() ? std::string("-") : s;
    };
    auto fit = [](SubFitness f) {
        switch (f) {
        case SubFitness::full:
            return "full";
        case SubFitness::restricted:
            return "restricted";
        case SubFitness::grade_blind:
            return "grade-blind";
        case SubFitness::area:
            return "area";
        }
        return "?";
    };
    for (const auto& l : topo.levels()) {
        std::string name = l.name + (l.is_top ? "*" : "");
        os << l.level_id;
        os << std::string(7 - std::to_string(l.level_id).size(), ' ') << name;
        os << std::string(name.size() < 10 ? 10 - name.size() : 1, ' ');
        const auto slots = std::to_string(l.slots.size());
        os << slots << std::string(slots.size() < 7 ? 7 - slots.size() : 1, ' ');
        const auto cap = std::to_string(l.capacity);
        os << cap << std::string(cap.size() < 10 ? 10 - cap.size() : 1, ' ');
        const std::string f = fit(l.fitness);
        os << f << std::string(f.size() < 13 ? 13 - f.size() : 1, ' ');
        const auto src = list(l.crossover_sources);
        os << src << std::string(src.size() < 17 ? 17 - src.size() : 1, ' ');
        os << list(l.evaluation_complements) << "\n";
    }
    os << "total capacity " << topo.total_capacity() << ", " << topo.slot_count() << " slots\n";
    return os.str();
}

} // namespace pga
