#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sma/objective.hpp"

// Real-coded genetic algorithm: filtered smooth initialization, intermediate
// recombination, single-gene mutation, and linear rank selection. Fitness is
// the bulk energy (lower is fitter). The RNG draw order is fixed and part of
// the reproducibility contract; identical seeds give bit-identical runs.

namespace sma {

/// Deterministic uniform generator. Doubles are built from the top 53 bits of
/// mt19937_64 draws so streams are bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    std::size_t index(std::size_t n) {
        const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

private:
    std::mt19937_64 engine_;
};

struct Chromosome {
    Eigen::VectorXd genes;  // packed interior displacements [cm]
    double fitness = 0.0;   // bulk energy W when valid
    bool valid = false;
};

struct GaConfig {
    int population = 60;
    int generations = 800;
    double gene_lo = -0.1, gene_hi = 0.1;      // [cm]
    int sparse_order = 6;                      // filter grid order
    double alpha_lo = -0.25, alpha_hi = 1.25;  // recombination range
    int mutations_per_generation = 1;
    int elitism = 1;
    std::uint64_t rng_seed = 42;
};

/// Uniform random chromosomes smoothed through the filter and evaluated.
std::vector<Chromosome> init_population(const EnergyProblem& problem,
                                        const GaConfig& cfg,
                                        const FilterPair& filter, Rng& rng);

/// Intermediate recombination o = x1 .* alpha + x2 .* (1 - alpha) with each
/// alpha_i drawn independently from [alpha_lo, alpha_hi].
Eigen::VectorXd crossover(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2,
                          const GaConfig& cfg, Rng& rng);

/// Replaces one uniformly chosen gene of one uniformly chosen chromosome by a
/// fresh draw from the gene range, cfg.mutations_per_generation times.
void mutate(std::vector<Chromosome>& population, const GaConfig& cfg, Rng& rng);

/// Linear rank-selection distribution for m ranked entries, worst first:
/// p_i = 2i / (m(m+1)), i = 1..m. Sums to 1.
Eigen::VectorXd rank_probabilities(int m);

/// Draws an index from a probability vector by inverse transform.
std::size_t rank_select(const Eigen::VectorXd& probabilities, Rng& rng);

struct GaResult {
    Chromosome best;
    std::vector<double> best_energy_trace;  // generations+1 entries, initial first
};

/// Full GA loop: per generation, rank-select parent pairs, produce a full
/// offspring population by crossover, mutate, then survivors = elites plus a
/// rank-selected fill from parents+offspring combined.
GaResult evolve(const EnergyProblem& problem, const GaConfig& cfg);

}  // namespace sma
