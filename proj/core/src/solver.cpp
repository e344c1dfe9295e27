#include "ghostlab/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "ghostlab/errors.hpp"
#include "ghostlab/numerics.hpp"

namespace ghostlab {

void SolveConfig::validate() const {
  if (!(tol_grad > 0.0)) throw ParameterError("tol_grad must be > 0");
  if (max_iters < 0) throw ParameterError("max_iters must be >= 0");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw ParameterError("armijo_c must lie in (0, 1)");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) throw ParameterError("backtrack_factor must lie in (0, 1)");
  if (max_backtracks < 1) throw ParameterError("max_backtracks must be >= 1");
  if (continuation.empty()) throw ParameterError("continuation must contain at least the target stage");
  for (std::size_t k = 0; k < continuation.size(); ++k) {
    const auto& s = continuation[k];
    if (!(s.eps >= 0.0) || !(s.mu >= 0.0) || !std::isfinite(s.eps) || !std::isfinite(s.mu)) {
      throw ParameterError("continuation stages need finite eps >= 0 and mu >= 0");
    }
    if (k > 0) {
      const auto& prev = continuation[k - 1];
      const bool decreasing = prev.eps > s.eps || (prev.eps == s.eps && prev.mu > s.mu);
      if (!decreasing) throw ParameterError("continuation must decrease strictly in (eps, mu) lexicographic order");
    }
  }
}

std::string_view to_string(StageOutcome o) {
  switch (o) {
    case StageOutcome::Converged:
      return "converged";
    case StageOutcome::Stalled:
      return "stalled";
    case StageOutcome::MaxIterations:
      return "max_iterations";
    case StageOutcome::LineSearchFailure:
      return "line_search_failure";
  }
  return "?";
}

namespace {

// Cell-center quadrature energy with the integrand frozen at each center.
class DiscreteEnergy {
 public:
  DiscreteEnergy(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                 const Grid& grid)
      : grid_(grid) {
    cells_.reserve(grid.cell_count());
    for (int j = 0; j < grid.m(); ++j) {
      for (int i = 0; i < grid.m(); ++i) cells_.emplace_back(spec, coeff_a, coeff_b, grid.cell_center(i, j));
    }
  }

  double energy(std::span<const double> u) const {
    const int m = grid_.m();
    const double area = grid_.h() * grid_.h();
    CompensatedSum sum;
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) sum.add(area * cells_[grid_.cell_index(i, j)].value(cell_gradient(u, i, j)));
    }
    return sum.value();
  }

  double energy_and_gradient(std::span<const double> u, std::span<double> grad) const {
    std::fill(grad.begin(), grad.end(), 0.0);
    const int m = grid_.m();
    const double h = grid_.h();
    const double area = h * h;
    const double w = 0.5 * h;  // h^2 * d(cell gradient)/d(u_node) magnitude
    CompensatedSum sum;
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) {
        GradientVector dz;
        sum.add(area * cells_[grid_.cell_index(i, j)].value_and_gradient(cell_gradient(u, i, j), dz));
        const double a = w * dz.z1, b = w * dz.z2;
        grad[grid_.node_index(i, j)] += -a - b;
        grad[grid_.node_index(i + 1, j)] += a - b;
        grad[grid_.node_index(i, j + 1)] += -a + b;
        grad[grid_.node_index(i + 1, j + 1)] += a + b;
      }
    }
    for (int j = 0; j <= m; ++j) {
      for (int i = 0; i <= m; ++i) {
        if (grid_.is_boundary_node(i, j)) grad[grid_.node_index(i, j)] = 0.0;
      }
    }
    return sum.value();
  }

 private:
  GradientVector cell_gradient(std::span<const double> u, int i, int j) const {
    const double inv_2h = 0.5 * grid_.m();
    const double u00 = u[grid_.node_index(i, j)], u10 = u[grid_.node_index(i + 1, j)];
    const double u01 = u[grid_.node_index(i, j + 1)], u11 = u[grid_.node_index(i + 1, j + 1)];
    return {(u10 + u11 - u00 - u01) * inv_2h, (u01 + u11 - u00 - u10) * inv_2h};
  }

  Grid grid_;
  std::vector<PointIntegrand> cells_;
};

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double max_abs(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

// Non-finite energies (overflow on a wild trial step) count as +inf.
double safe_energy(const DiscreteEnergy& e, std::span<const double> u) {
  const double f = e.energy(u);
  return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
}

StageRecord descend(const DiscreteEnergy& energy, std::vector<double>& u, const SolveConfig& cfg,
                    std::vector<double>& history, std::string& diagnostic) {
  const std::size_t n = u.size();
  std::vector<double> g(n), g_new(n), d(n), trial(n);
  auto step_to = [&](double alpha) {
    for (std::size_t k = 0; k < n; ++k) trial[k] = u[k] + alpha * d[k];
    return safe_energy(energy, trial);
  };

  StageRecord rec;
  double f = energy.energy_and_gradient(u, g);
  history.push_back(f);
  double gnorm = max_abs(g);
  for (std::size_t k = 0; k < n; ++k) d[k] = -g[k];
  double alpha_guess = 1.0;
  const auto restart_period = static_cast<int>(std::max<std::size_t>(n, 50));
  int since_restart = 0;
  rec.outcome = StageOutcome::MaxIterations;

  for (int it = 0;; ++it) {
    if (gnorm <= cfg.tol_grad) {
      rec.outcome = StageOutcome::Converged;
      break;
    }
    if (it >= cfg.max_iters) break;

    double slope = dot(g, d);
    if (!(slope < 0.0) || since_restart >= restart_period) {
      for (std::size_t k = 0; k < n; ++k) d[k] = -g[k];
      slope = -dot(g, g);
      since_restart = 0;
    }
    auto armijo = [&](double alpha, double fa) { return fa <= f + cfg.armijo_c * alpha * slope; };

    // Trial step, then the minimizer of the quadratic through f(0), f'(0), f(trial).
    const double at = alpha_guess;
    const double ft = step_to(at);
    std::optional<double> aq;
    const double curvature = (ft - f - slope * at) / (at * at);
    if (std::isfinite(curvature) && curvature > 0.0) {
      aq = -slope / (2.0 * curvature);
      if (slope * slope / (4.0 * curvature) <= 16.0 * std::numeric_limits<double>::epsilon() * std::abs(f)) {
        rec.outcome = StageOutcome::Stalled;
        break;
      }
    }

    double best_alpha = 0.0;
    double best_f = std::numeric_limits<double>::infinity();
    if (armijo(at, ft)) {
      best_alpha = at;
      best_f = ft;
    }
    if (aq && *aq != at) {
      const double fq = step_to(*aq);
      if (armijo(*aq, fq) && fq < best_f) {
        best_alpha = *aq;
        best_f = fq;
      }
    }
    if (best_alpha == 0.0) {
      double alpha = aq ? std::min(*aq, at) : at;
      for (int k = 0; k < cfg.max_backtracks; ++k) {
        alpha *= cfg.backtrack_factor;
        const double fa = step_to(alpha);
        if (armijo(alpha, fa)) {
          best_alpha = alpha;
          best_f = fa;
          break;
        }
      }
    }
    if (best_alpha == 0.0) {
      rec.outcome = StageOutcome::LineSearchFailure;
      std::ostringstream msg;
      msg << "line search failed after " << cfg.max_backtracks << " reductions at iteration " << it
          << " (energy " << format_number(f) << ", gradient max-norm " << format_number(gnorm) << ")";
      diagnostic = msg.str();
      break;
    }
    if (!(best_f < f)) {
      rec.outcome = StageOutcome::Stalled;
      break;
    }

    for (std::size_t k = 0; k < n; ++k) u[k] += best_alpha * d[k];
    const double gg_old = dot(g, g);
    f = energy.energy_and_gradient(u, g_new);
    history.push_back(f);
    ++rec.iterations;
    ++since_restart;
    gnorm = max_abs(g_new);

    double num = 0.0;
    for (std::size_t k = 0; k < n; ++k) num += g_new[k] * (g_new[k] - g[k]);
    const double beta = std::max(0.0, num / gg_old);
    for (std::size_t k = 0; k < n; ++k) d[k] = -g_new[k] + beta * d[k];
    g.swap(g_new);
    alpha_guess = best_alpha;
  }

  rec.energy = f;
  rec.grad_norm = gnorm;
  return rec;
}

void check_boundary_grid(const Grid& grid, const DiscreteField& boundary) {
  if (!(boundary.grid() == grid)) throw SizeError("boundary field lives on a different grid");
}

DiscreteField initial_field(const DiscreteField& boundary, InitialGuess guess) {
  if (guess == InitialGuess::HarmonicExtension) return harmonic_extension(boundary);
  DiscreteField out = boundary;
  auto values = out.values();
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!out.is_boundary(k)) values[k] = 0.0;
  }
  return out;
}

}  // namespace

DiscreteField assemble_objective_gradient(const IntegrandSpec& spec, const CoefficientField& coeff_a,
                                          const CoefficientField& coeff_b, const DiscreteField& field) {
  const DiscreteEnergy energy(spec, coeff_a, coeff_b, field.grid());
  std::vector<double> grad(field.grid().node_count());
  energy.energy_and_gradient(field.values(), grad);
  return DiscreteField(field.grid(), std::move(grad));
}

DiscreteField harmonic_extension(const DiscreteField& boundary) {
  const Grid& g = boundary.grid();
  const int m = g.m();
  const int inner = m - 1;
  auto unknown = [inner](int i, int j) { return (j - 1) * inner + (i - 1); };

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(inner) * inner * 5);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(inner) * inner);
  for (int j = 1; j < m; ++j) {
    for (int i = 1; i < m; ++i) {
      const int row = unknown(i, j);
      entries.emplace_back(row, row, 4.0);
      const int nbrs[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (const auto& nb : nbrs) {
        if (g.is_boundary_node(nb[0], nb[1])) {
          rhs[row] += boundary(nb[0], nb[1]);
        } else {
          entries.emplace_back(row, unknown(nb[0], nb[1]), -1.0);
        }
      }
    }
  }
  Eigen::SparseMatrix<double> lap(rhs.size(), rhs.size());
  lap.setFromTriplets(entries.begin(), entries.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(lap);
  if (chol.info() != Eigen::Success) throw DegenerateError("harmonic extension: factorization failed");
  const Eigen::VectorXd sol = chol.solve(rhs);

  DiscreteField out = boundary;
  for (int j = 1; j < m; ++j) {
    for (int i = 1; i < m; ++i) out(i, j) = sol[unknown(i, j)];
  }
  return out;
}

SolveResult minimize(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                     const Grid& grid, const DiscreteField& boundary, const SolveConfig& config) {
  SolveConfig single = config;
  single.continuation = {config.continuation.empty() ? RegularizationStage{} : config.continuation.back()};
  return ghost_continuation(spec, coeff_a, coeff_b, grid, boundary, single);
}

SolveResult ghost_continuation(const IntegrandSpec& spec, const CoefficientField& coeff_a,
                               const CoefficientField& coeff_b, const Grid& grid, const DiscreteField& boundary,
                               const SolveConfig& config) {
  config.validate();
  spec.validate();
  check_boundary_grid(grid, boundary);

  SolveResult result{initial_field(boundary, config.initial_guess), {}, {}, 0.0, 0, false, {}, {}};
  std::vector<double> u(result.field.values().begin(), result.field.values().end());

  for (const RegularizationStage& stage : config.continuation) {
    const IntegrandSpec staged = ghost_regularize(spec, stage.eps, stage.mu);
    const DiscreteEnergy energy(staged, coeff_a, coeff_b, grid);
    result.stage_starts.push_back(result.energy_history.size());
    StageRecord rec = descend(energy, u, config, result.energy_history, result.diagnostic);
    rec.eps = stage.eps;
    rec.mu = stage.mu;
    result.per_stage.push_back(rec);
    result.iterations += rec.iterations;
    result.grad_norm = rec.grad_norm;
    if (rec.outcome == StageOutcome::LineSearchFailure) break;
  }

  result.field = DiscreteField(grid, std::move(u));
  result.converged = result.per_stage.size() == config.continuation.size() &&
                     result.per_stage.back().outcome == StageOutcome::Converged;
  return result;
}

SplitBounds split_gradient_bounds(const IntegrandSpec& spec, const CoefficientField& coeff_a,
                                  const CoefficientField& coeff_b, const DiscreteField& field,
                                  const std::vector<double>& thresholds) {
  if (thresholds.empty() || thresholds.front() != 0.0) throw ParameterError("thresholds must start at 0");
  for (std::size_t k = 1; k < thresholds.size(); ++k) {
    if (!(thresholds[k] > thresholds[k - 1])) throw ParameterError("thresholds must increase strictly");
  }

  const CellGradientField grads = discrete_gradient(field);
  const Grid& g = field.grid();
  const double area = g.h() * g.h();

  SplitBounds out;
  out.thresholds = thresholds;
  out.bands.resize(thresholds.size());
  std::vector<CompensatedSum> sums(thresholds.size());
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    out.bands[k].lower = thresholds[k];
    out.bands[k].upper = k + 1 < thresholds.size() ? thresholds[k + 1] : std::numeric_limits<double>::infinity();
  }
  for (int j = 0; j < g.m(); ++j) {
    for (int i = 0; i < g.m(); ++i) {
      const GradientVector z = grads(i, j);
      const double r = z.norm();
      const auto band = static_cast<std::size_t>(std::upper_bound(thresholds.begin(), thresholds.end(), r) -
                                                 thresholds.begin()) - 1;
      GradientBand& b = out.bands[band];
      ++b.cell_count;
      sums[band].add(area * eval_density(spec, coeff_a, coeff_b, g.cell_center(i, j), z));
      b.max_gradient = std::max(b.max_gradient, r);
    }
  }
  for (std::size_t k = 0; k < thresholds.size(); ++k) out.bands[k].energy = sums[k].value();
  out.total_cells = g.cell_count();
  out.total_energy = integrate(spec, coeff_a, coeff_b, grads);
  return out;
}

}  // namespace ghostlab
