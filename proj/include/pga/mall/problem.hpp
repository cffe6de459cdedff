#pragma once

/// @file problem.hpp
/// @brief Mall tenant selection as a pyramid problem (rent negated for minimisation).

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include <pga/core/genome.hpp>
#include <pga/mall/instance.hpp>
#include <pga/mall/rent.hpp>
#include <pga/problem.hpp>
#include <pga/topology.hpp>

namespace pga::mall {

class MallProblem {
  public:
    explicit MallProblem(const MallInstance& inst) : inst_(&inst), all_types_(inst.type_count()) {
        std::iota(all_types_.begin(), all_types_.end(), Gene{0});
    }

    [[nodiscard]] const MallInstance& instance() const noexcept { return *inst_; }
    [[nodiscard]] std::size_t slot_count() const noexcept { return inst_->locations(); }
    [[nodiscard]] std::span<const Gene> domain(std::size_t) const noexcept { return all_types_; }

    [[nodiscard]] Evaluation evaluate_full(std::span<const Gene> genes) const { return mall::evaluate_full(*inst_, genes); }

    [[nodiscard]] Evaluation evaluate_level(const LevelSpec& level, std::span<const Gene> genes) const {
        switch (level.fitness) {
        case SubFitness::area:
            return area_evaluation(*inst_, static_cast<std::size_t>(level.groups.at(0)), genes);
        case SubFitness::full: {
            std::vector<Gene> full(inst_->locations());
            for (std::size_t idx = 0; idx < level.slots.size(); ++idx) {
                full[level.slots[idx]] = genes[idx];
            }
            return mall::evaluate_full(*inst_, full);
        }
        default:
            break;
        }
        throw std::invalid_argument("level fitness does not apply to the mall problem");
    }

    /// Mean absolute fixed rent.
    [[nodiscard]] double objective_scale() const {
        double sum = 0.0;
        for (double f : inst_->fixed_rent) {
            sum += std::abs(f);
        }
        return sum == 0.0 ? 1.0 : sum / static_cast<double>(inst_->fixed_rent.size());
    }

    /// Rent, the value reported to users.
    [[nodiscard]] double report(const Evaluation& e) const noexcept { return -e.raw; }

  private:
    const MallInstance* inst_;
    std::vector<Gene> all_types_;
};

static_assert(CoevolutionProblem<MallProblem>);

} // namespace pga::mall
