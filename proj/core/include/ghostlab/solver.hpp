#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ghostlab/grid.hpp"
#include "ghostlab/integrands.hpp"

namespace ghostlab {

/// One (eps, mu) regularization level of a continuation path.
struct RegularizationStage {
  double eps = 0.0;
  double mu = 0.0;
};

enum class InitialGuess {
  HarmonicExtension,  // 5-point discrete harmonic extension of the boundary data
  ZeroInterior,       // boundary data, zero at interior nodes
};

struct SolveConfig {
  /// Stop when max |dE/du_k| over interior nodes falls to this value.
  double tol_grad = 1e-9;
  /// Descent iterations per stage.
  int max_iters = 20000;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  int max_backtracks = 60;
  /// Regularization path, strictly decreasing lexicographically; the last
  /// entry is the target problem.
  std::vector<RegularizationStage> continuation{RegularizationStage{}};
  InitialGuess initial_guess = InitialGuess::HarmonicExtension;

  /// Throws ParameterError on invalid settings.
  void validate() const;
};

enum class StageOutcome {
  Converged,          // grad_norm <= tol_grad
  Stalled,            // no representable energy decrease left (round-off floor)
  MaxIterations,
  LineSearchFailure,  // no Armijo step after max_backtracks reductions
};

std::string_view to_string(StageOutcome o);

struct StageRecord {
  double eps = 0.0;
  double mu = 0.0;
  double energy = 0.0;
  int iterations = 0;
  double grad_norm = 0.0;
  StageOutcome outcome = StageOutcome::MaxIterations;
};

struct SolveResult {
  DiscreteField field;
  /// Energies of the accepted iterates; each stage starts with the energy of
  /// its starting field (see stage_starts).
  std::vector<double> energy_history;
  std::vector<std::size_t> stage_starts;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<StageRecord> per_stage;
  std::string diagnostic;
};

/// Derivative of the cell-center quadrature energy with respect to interior
/// nodal values; zero at boundary nodes.
DiscreteField assemble_objective_gradient(const IntegrandSpec& spec, const CoefficientField& coeff_a,
                                          const CoefficientField& coeff_b, const DiscreteField& field);

/// Interior values solving the 5-point Laplace equation with the boundary
/// values of `boundary` (interior values of the input are ignored).
DiscreteField harmonic_extension(const DiscreteField& boundary);

/// Minimizes the discrete energy of ghost_regularize(spec, last stage) with
/// Dirichlet data taken from the boundary nodes of `boundary`.
///
/// Polak-Ribiere+ conjugate directions with an Armijo backtracking line search;
/// every accepted step strictly decreases the energy.  Non-convergence is
/// reported through `converged`, never thrown.
SolveResult minimize(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                     const Grid& grid, const DiscreteField& boundary, const SolveConfig& config);

/// Runs minimize once per continuation stage, warm-starting each stage from
/// the previous minimizer.  A line-search failure aborts the remaining
/// stages; per_stage then holds the stages that ran.
SolveResult ghost_continuation(const IntegrandSpec& spec, const CoefficientField& coeff_a,
                               const CoefficientField& coeff_b, const Grid& grid, const DiscreteField& boundary,
                               const SolveConfig& config);

struct GradientBand {
  double lower = 0.0;
  double upper = 0.0;  // +inf for the last band
  std::size_t cell_count = 0;
  double energy = 0.0;
  double max_gradient = 0.0;
};

struct SplitBounds {
  std::vector<double> thresholds;
  std::vector<GradientBand> bands;
  std::size_t total_cells = 0;
  double total_energy = 0.0;
};

/// Partitions cells by |Du| into [t_k, t_{k+1}) and a final [t_last, inf).
/// thresholds must start at 0 and increase strictly.
SplitBounds split_gradient_bounds(const IntegrandSpec& spec, const CoefficientField& coeff_a,
                                  const CoefficientField& coeff_b, const DiscreteField& field,
                                  const std::vector<double>& thresholds);

}  // namespace ghostlab
