#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sma/bfgs.hpp"
#include "sma/ga.hpp"
#include "sma/objective.hpp"

// Experiment runner: presets for the three reference experiments, flat
// key=value configuration, the seeded GA -> grid transfer -> BFGS pipeline,
// and CSV/SVG artifact emission.

namespace sma {

struct ExperimentSpec {
    int dimensionality = 1;  // 1 wire, 2 patch
    Domain1D wire;           // geometry only; orders below are authoritative
    Domain2D patch;
    LoadCase load;
    double temperature = 210.0;  // [K]
    int ga_order = 14;
    int refine_order = 14;
    GaConfig ga;            // ga.sparse_order is the filter grid order
    BfgsConfig bfgs;
    std::string output_dir = "out";
};

/// Named presets: experiment1 (1D wire, f=500), experiment2 (2D patch,
/// fx=fy=3000), experiment3 (2D patch, fx=2000, fy=0).
ExperimentSpec preset(const std::string& name);

/// Flat key=value file with dotted sections (ga.population=60, bfgs.relaxation=0.05,
/// load.fx=3000, domain.x_left=-1, ...). '#' starts a comment. Unknown keys throw.
ExperimentSpec parse_config_file(const std::string& path);
void apply_override(ExperimentSpec& spec, const std::string& key_equals_value);

/// Every effective parameter of the spec as ordered key=value pairs.
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentSpec& spec);

struct RunArtifacts {
    ExperimentSpec spec;  // effective configuration, defaults included

    // 1D results (dimensionality == 1), on the refine grid
    Eigen::VectorXd u;
    Eigen::VectorXd eps;

    // 2D results
    Field2D field;
    StrainFields strains;

    std::vector<double> ga_trace;        // best energy per generation, initial first
    std::vector<double> bfgs_step_norms; // one per quasi-Newton iteration
    double best_ga_energy = 0.0;
    double final_energy = 0.0;
    bool converged = false;
};

/// Seeded end-to-end pipeline: GA on the coarse grid, Chebyshev transfer of
/// the fittest chromosome to the refine grid, quasi-Newton refinement.
RunArtifacts run(const ExperimentSpec& spec);

/// Nodal field table. 2D header: x,y,ux,uy,e1,e2,e3,density; 1D header:
/// x,u,eps,density. Row-major node order, full round-trip precision.
void write_field_csv(const RunArtifacts& artifacts, const std::string& path);

/// ga_path gets generation,best_energy; bfgs_path gets iteration,step_norm.
void write_trace_csv(const RunArtifacts& artifacts, const std::string& ga_path,
                     const std::string& bfgs_path);

/// RGB on a diverging blue-white-red scale symmetric about zero, so that
/// negating the value swaps the red and blue channels exactly.
std::array<int, 3> diverging_color(double value, double vmax);

/// One filled cell per node (cell edges at inter-node midpoints), diverging
/// color scale, min/max legend. Byte-deterministic for fixed input.
void render_heatmap_svg(const Eigen::MatrixXd& field, const Domain2D& dom,
                        const std::string& path);

/// Max componentwise relative error of the analytic gradient against central
/// finite differences over seeded random interior fields.
double max_gradient_rel_error(const EnergyProblem& problem, int trials,
                              std::uint64_t seed, double step = 1e-7);

/// Subcommands: run, wells, gradcheck. Returns 0 on success, 1 on
/// convergence failure, 2 on usage errors.
int cli_main(int argc, const char* const* argv);

}  // namespace sma
