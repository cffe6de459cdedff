#pragma once

/// @file problem.hpp
/// @brief Nurse scheduling as a pyramid problem.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <pga/core/genome.hpp>
#include <pga/nurse/fitness.hpp>
#include <pga/nurse/hillclimb.hpp>
#include <pga/nurse/instance.hpp>
#include <pga/problem.hpp>
#include <pga/topology.hpp>

namespace pga::nurse {

class NurseProblem {
  public:
    explicit NurseProblem(const NurseInstance& inst, HillclimbOptions climb = {}) : inst_(&inst), climb_(climb) {}

    [[nodiscard]] const NurseInstance& instance() const noexcept { return *inst_; }
    [[nodiscard]] std::size_t slot_count() const noexcept { return inst_->n(); }
    [[nodiscard]] std::span<const Gene> domain(std::size_t slot) const { return inst_->feasible_sets[slot]; }

    [[nodiscard]] Evaluation evaluate_full(std::span<const Gene> genes) const { return nurse::evaluate_full(*inst_, genes); }

    [[nodiscard]] Evaluation evaluate_level(const LevelSpec& level, std::span<const Gene> genes) const {
        switch (level.fitness) {
        case SubFitness::restricted:
            return evaluate_subset(*inst_, level.slots, genes, level.groups);
        case SubFitness::grade_blind:
        case SubFitness::full: {
            std::vector<Gene> full(inst_->n());
            for (std::size_t idx = 0; idx < level.slots.size(); ++idx) {
                full[level.slots[idx]] = genes[idx];
            }
            return level.fitness == SubFitness::full ? nurse::evaluate_full(*inst_, full)
                                                     : evaluate_grade_blind(*inst_, full);
        }
        case SubFitness::area:
            break;
        }
        throw std::invalid_argument("level fitness does not apply to nurse scheduling");
    }

    /// Mean preference cost over feasible (nurse, pattern) pairs.
    [[nodiscard]] double objective_scale() const {
        double sum = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < inst_->n(); ++i) {
            for (Gene j : inst_->feasible_sets[i]) {
                sum += inst_->cost(i, j);
                ++cnt;
            }
        }
        return cnt == 0 || sum == 0.0 ? 1.0 : sum / static_cast<double>(cnt);
    }

    /// Preference cost, the value reported to users.
    [[nodiscard]] double report(const Evaluation& e) const noexcept { return e.raw; }

    /// Hillclimb balanced schedules in place; true if anything changed.
    bool polish(std::vector<Gene>& full, double w) const {
        if (!is_balanced(*inst_, full)) {
            return false;
        }
        auto better = improve(*inst_, full, w, climb_);
        if (better == full) {
            return false;
        }
        full = std::move(better);
        return true;
    }

  private:
    const NurseInstance* inst_;
    HillclimbOptions climb_;
};

static_assert(PolishableProblem<NurseProblem>);

} // namespace pga::nurse
