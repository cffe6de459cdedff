#pragma once

/// @file operators.hpp
/// @brief Selection, variation, replacement and stopping operators of the generational loop.
///
/// All operators minimise: a lower cached fitness is better.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <pga/core/genome.hpp>
#include <pga/core/random.hpp>

namespace pga {

/// Indices of `fitness` sorted best first; ties keep the lower index first.
[[nodiscard]] inline std::vector<std::size_t> rank_order(std::span<const double> fitness) {
    std::vector<std::size_t> order(fitness.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
    return order;
}

[[nodiscard]] inline std::vector<double> fitness_vector(const SubPopulation& pop) {
    std::vector<double> f;
    f.reserve(pop.agents.size());
    for (const auto& a : pop.agents) {
        f.push_back(a.fitness());
    }
    return f;
}

/// Roulette wheel over fitness ranks, built once and sampled many times.
///
/// The agent of rank r (1 = best) among n receives weight n - r + 1, so the
/// wheel holds n(n+1)/2 units in total. Agents with equal fitness share the
/// weight of the ranks they jointly occupy.
class RankWheel {
  public:
    RankWheel() = default;

    explicit RankWheel(std::span<const double> fitness) : order_(rank_order(fitness)) {
        if (order_.empty()) {
            throw std::invalid_argument("empty population");
        }
        tie_begin_.resize(order_.size());
        tie_end_.resize(order_.size());
        std::size_t start = 0;
        for (std::size_t r = 1; r <= order_.size(); ++r) {
            if (r == order_.size() || fitness[order_[r]] != fitness[order_[start]]) {
                for (std::size_t q = start; q < r; ++q) {
                    tie_begin_[q] = start;
                    tie_end_[q] = r;
                }
                start = r;
            }
        }
    }

    explicit RankWheel(const SubPopulation& pop) : RankWheel(std::span<const double>(fitness_vector(pop))) {}

    [[nodiscard]] std::size_t operator()(Rng& rng) const {
        const std::size_t n = order_.size();
        if (n == 0) {
            throw std::invalid_argument("empty population");
        }
        const std::size_t total = n * (n + 1) / 2;
        const std::size_t ticket = uniform_index(rng, total);
        // smallest rank r with cumulative(r) > ticket, cumulative(r) = r*n - r(r-1)/2
        std::size_t lo = 1;
        std::size_t hi = n;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            const std::size_t cum = mid * n - mid * (mid - 1) / 2;
            if (cum > ticket) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        const std::size_t pos = lo - 1;
        const std::size_t ties = tie_end_[pos] - tie_begin_[pos];
        return ties == 1 ? order_[pos] : order_[tie_begin_[pos] + uniform_index(rng, ties)];
    }

    [[nodiscard]] std::span<const std::size_t> order() const noexcept { return order_; }
    [[nodiscard]] std::size_t best() const { return order_.front(); }
    [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }

  private:
    std::vector<std::size_t> order_;
    std::vector<std::size_t> tie_begin_;
    std::vector<std::size_t> tie_end_;
};

/// Select one agent index from `pop` by rank roulette.
[[nodiscard]] inline std::size_t rank_roulette_select(const SubPopulation& pop, Rng& rng) {
    if (pop.agents.empty()) {
        throw std::invalid_argument("empty population");
    }
    return RankWheel(pop)(rng);
}

/// Two-parent two-children parameterised uniform crossover.
///
/// Child one takes each gene from `a` with probability `p`; child two takes the
/// complementary choice.
[[nodiscard]] inline std::pair<Genome, Genome> uniform_crossover(const Genome& a, const Genome& b, double p,
                                                                 Rng& rng) {
    if (a.level_id != b.level_id || a.genes.size() != b.genes.size()) {
        throw std::invalid_argument("incompatible genomes");
    }
    Genome c1(a.level_id, a.genes);
    Genome c2(b.level_id, b.genes);
    for (std::size_t i = 0; i < a.genes.size(); ++i) {
        if (!bernoulli(rng, p)) {
            c1.genes[i] = b.genes[i];
            c2.genes[i] = a.genes[i];
        }
    }
    return {std::move(c1), std::move(c2)};
}

/// Per-gene re-initialisation within the slot's feasible set.
///
/// Each gene is redrawn independently with probability `rate`; positions are
/// visited by geometric skipping, which is distributionally identical to one
/// Bernoulli trial per gene. Returns the number of genes whose value changed.
inline std::size_t mutate_in_place(Genome& g, double rate, std::span<const std::span<const Gene>> domains, Rng& rng) {
    if (domains.size() < g.genes.size()) {
        throw std::invalid_argument("infeasible slot domain");
    }
    for (std::size_t i = 0; i < g.genes.size(); ++i) {
        if (domains[i].empty()) {
            throw std::invalid_argument("infeasible slot domain");
        }
    }
    if (rate <= 0.0 || g.genes.empty()) {
        return 0;
    }
    std::size_t changed = 0;
    auto redraw = [&](std::size_t pos) {
        const auto dom = domains[pos];
        const Gene v = dom[uniform_index(rng, dom.size())];
        if (v != g.genes[pos]) {
            g.genes[pos] = v;
            ++changed;
        }
    };
    if (rate >= 1.0) {
        for (std::size_t pos = 0; pos < g.genes.size(); ++pos) {
            redraw(pos);
        }
    } else {
        std::geometric_distribution<std::size_t> gap(rate);
        for (std::size_t pos = gap(rng); pos < g.genes.size(); pos += 1 + gap(rng)) {
            redraw(pos);
        }
    }
    if (changed > 0) {
        g.clear_cache();
    }
    return changed;
}

[[nodiscard]] inline Genome mutate(Genome g, double rate, std::span<const std::span<const Gene>> domains, Rng& rng) {
    mutate_in_place(g, rate, domains, rng);
    return g;
}

/// Number of agents replaced each generation: ceil(fraction * capacity).
[[nodiscard]] inline std::size_t replaced_count(std::size_t capacity, double fraction) {
    const double raw = fraction * static_cast<double>(capacity);
    const auto n = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    return std::min(n, capacity);
}

/// Elitist truncation: keep the best parents, fill the replaced slots with the best children.
///
/// With `elitist_pool` the non-retained parents compete with the children for
/// the replaced slots instead of being discarded outright.
[[nodiscard]] inline SubPopulation replace_generation(const SubPopulation& pop, std::vector<Genome> children,
                                                      double fraction, bool elitist_pool = false) {
    const std::size_t replaced = replaced_count(pop.capacity, fraction);
    const std::size_t keep = pop.capacity - replaced;
    if (children.size() < replaced) {
        throw std::invalid_argument("underfilled generation");
    }
    const auto parent_order = rank_order(fitness_vector(pop));

    SubPopulation next{pop.level_id, pop.capacity, {}};
    next.agents.reserve(pop.capacity);
    for (std::size_t r = 0; r < keep && r < parent_order.size(); ++r) {
        next.agents.push_back(pop.agents[parent_order[r]]);
    }
    if (elitist_pool) {
        for (std::size_t r = keep; r < parent_order.size(); ++r) {
            children.push_back(pop.agents[parent_order[r]]);
        }
    }
    std::vector<double> child_fitness;
    child_fitness.reserve(children.size());
    for (const auto& c : children) {
        child_fitness.push_back(c.fitness());
    }
    const auto child_order = rank_order(child_fitness);
    for (std::size_t r = 0; next.agents.size() < pop.capacity && r < child_order.size(); ++r) {
        next.agents.push_back(std::move(children[child_order[r]]));
    }
    if (next.agents.size() != pop.capacity) {
        throw std::invalid_argument("underfilled generation");
    }
    return next;
}

/// Stagnation test on the top level's best-fitness history.
///
/// True when the last `window` entries hold no value strictly better than the
/// best of all earlier entries, or the generation cap is reached.
[[nodiscard]] inline bool check_stop(std::span<const double> best_history, std::size_t window,
                                     std::size_t max_generations, std::size_t current_gen) {
    if (current_gen >= max_generations) {
        return true;
    }
    if (window == 0 || best_history.size() < window + 1) {
        return false;
    }
    const auto split = best_history.end() - static_cast<std::ptrdiff_t>(window);
    const double earlier = *std::min_element(best_history.begin(), split);
    const double recent = *std::min_element(split, best_history.end());
    return recent >= earlier;
}

} // namespace pga
