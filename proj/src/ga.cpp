#include "sma/ga.hpp"

#include <algorithm>
#include <stdexcept>

namespace sma {

namespace {

void evaluate(const EnergyProblem& problem, Chromosome& ch) {
    if (ch.valid) return;
    ch.fitness = problem.energy(ch.genes);
    ch.valid = true;
}

// Worst first (largest energy first); stable so equal-fitness duplicates keep
// a deterministic order.
void sort_worst_first(std::vector<Chromosome>& population) {
    std::stable_sort(population.begin(), population.end(),
                     [](const Chromosome& a, const Chromosome& b) {
                         return a.fitness > b.fitness;
                     });
}

const Chromosome& best_of(const std::vector<Chromosome>& population) {
    const Chromosome* best = &population.front();
    for (const Chromosome& ch : population)
        if (ch.fitness < best->fitness) best = &ch;
    return *best;
}

// Weighted sampling without replacement: survivors are distinct individuals.
// `weights` is aligned with `alive`; a drawn index is removed from both.
std::size_t draw_without_replacement(std::vector<std::size_t>& alive,
                                     std::vector<double>& weights, Rng& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double u = rng.uniform01() * total;
    double cum = 0.0;
    std::size_t pick = alive.size() - 1;
    for (std::size_t i = 0; i < alive.size(); ++i) {
        cum += weights[i];
        if (u < cum) {
            pick = i;
            break;
        }
    }
    const std::size_t chosen = alive[pick];
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(pick));
    weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(pick));
    return chosen;
}

}  // namespace

std::vector<Chromosome> init_population(const EnergyProblem& problem,
                                        const GaConfig& cfg,
                                        const FilterPair& filter, Rng& rng) {
    const int n = problem.unknown_count();
    std::vector<Chromosome> population(cfg.population);
    for (Chromosome& ch : population) {
        Eigen::VectorXd raw(n);
        for (int g = 0; g < n; ++g) raw(g) = rng.uniform(cfg.gene_lo, cfg.gene_hi);
        ch.genes = problem.smooth(raw, filter);
        evaluate(problem, ch);
    }
    return population;
}

Eigen::VectorXd crossover(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2,
                          const GaConfig& cfg, Rng& rng) {
    if (x1.size() != x2.size())
        throw std::invalid_argument("crossover: gene length mismatch");
    Eigen::VectorXd child(x1.size());
    for (Eigen::Index i = 0; i < x1.size(); ++i) {
        const double alpha = rng.uniform(cfg.alpha_lo, cfg.alpha_hi);
        child(i) = x1(i) * alpha + x2(i) * (1.0 - alpha);
    }
    return child;
}

void mutate(std::vector<Chromosome>& population, const GaConfig& cfg, Rng& rng) {
    if (population.empty())
        throw std::invalid_argument("mutate: empty population");
    for (int m = 0; m < cfg.mutations_per_generation; ++m) {
        Chromosome& ch = population[rng.index(population.size())];
        const std::size_t gene = rng.index(static_cast<std::size_t>(ch.genes.size()));
        ch.genes(static_cast<Eigen::Index>(gene)) =
            rng.uniform(cfg.gene_lo, cfg.gene_hi);
        ch.valid = false;
    }
}

Eigen::VectorXd rank_probabilities(int m) {
    if (m < 1) throw std::invalid_argument("rank_probabilities: m must be >= 1");
    Eigen::VectorXd p(m);
    const double denom = static_cast<double>(m) * (m + 1);
    for (int i = 0; i < m; ++i) p(i) = 2.0 * (i + 1) / denom;
    return p;
}

std::size_t rank_select(const Eigen::VectorXd& probabilities, Rng& rng) {
    const double u = rng.uniform01();
    double cum = 0.0;
    for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
        cum += probabilities(i);
        if (u < cum) return static_cast<std::size_t>(i);
    }
    return static_cast<std::size_t>(probabilities.size() - 1);
}

GaResult evolve(const EnergyProblem& problem, const GaConfig& cfg) {
    if (cfg.population < 2)
        throw std::invalid_argument("evolve: population must be >= 2");
    if (!(cfg.gene_lo < cfg.gene_hi))
        throw std::invalid_argument("evolve: empty gene range");

    Rng rng(cfg.rng_seed);
    const FilterPair filter = filter_pair(problem.grid_order(), cfg.sparse_order);

    std::vector<Chromosome> population =
        init_population(problem, cfg, filter, rng);

    GaResult result;
    result.best = best_of(population);
    result.best_energy_trace.push_back(result.best.fitness);

    const Eigen::VectorXd parent_probs = rank_probabilities(cfg.population);

    for (int gen = 0; gen < cfg.generations; ++gen) {
        sort_worst_first(population);

        std::vector<Chromosome> offspring;
        offspring.reserve(population.size());
        for (int c = 0; c < cfg.population; ++c) {
            const std::size_t i1 = rank_select(parent_probs, rng);
            const std::size_t i2 = rank_select(parent_probs, rng);
            Chromosome child;
            child.genes =
                crossover(population[i1].genes, population[i2].genes, cfg, rng);
            offspring.push_back(std::move(child));
        }
        mutate(offspring, cfg, rng);
        for (Chromosome& ch : offspring) evaluate(problem, ch);

        std::vector<Chromosome> pool = std::move(population);
        pool.insert(pool.end(), offspring.begin(), offspring.end());
        sort_worst_first(pool);

        // Survivors: elites, then a rank-weighted sample of distinct
        // individuals from the combined parent+offspring pool.
        std::vector<Chromosome> next;
        next.reserve(cfg.population);
        const int elites = std::min(cfg.elitism, cfg.population);
        for (int e = 0; e < elites; ++e) next.push_back(pool[pool.size() - 1 - e]);

        std::vector<std::size_t> alive;
        std::vector<double> weights;
        alive.reserve(pool.size());
        weights.reserve(pool.size());
        for (std::size_t i = 0; i + static_cast<std::size_t>(elites) < pool.size(); ++i) {
            alive.push_back(i);
            weights.push_back(static_cast<double>(i + 1));  // linear rank weight
        }
        while (static_cast<int>(next.size()) < cfg.population)
            next.push_back(pool[draw_without_replacement(alive, weights, rng)]);
        population = std::move(next);

        const Chromosome& gen_best = best_of(population);
        if (gen_best.fitness < result.best.fitness) result.best = gen_best;
        result.best_energy_trace.push_back(gen_best.fitness);
    }
    return result;
}

}  // namespace sma
