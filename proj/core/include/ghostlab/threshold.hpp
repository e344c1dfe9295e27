#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace ghostlab {

/// Growth/regularity parameters (p, q)-growth with an alpha-Hölder coefficient in R^n.
struct GrowthParams {
  double p = 2.0;
  double q = 2.0;
  double alpha = 1.0;
  int n = 2;
  std::optional<double> beta;   // second-phase Hölder exponent
  std::optional<double> s_exp;  // second-phase growth exponent

  /// Throws ParameterError unless 1 < p <= q, 0 < alpha <= 1, n >= 2.
  void validate() const;
};

// Ordered by increasing q at fixed (p, alpha, n).
enum class Regime {
  UniformSchauder,
  SharpSchauderHolds,
  Borderline,
  DoublePhaseBounded,
  CounterexampleRegion,
};

std::string_view to_string(Regime r);
std::optional<Regime> regime_from_string(std::string_view s);

struct RegularityVerdict {
  Regime regime = Regime::UniformSchauder;
  double margin = 0.0;  // 1 + alpha/n - q/p
};

/// Classifies (p, q, alpha, n) against q/p < 1 + alpha/n.
///
///   q == p                       -> UniformSchauder
///   margin == 0 (exactly)        -> Borderline
///   margin > 0                   -> SharpSchauderHolds
///   margin < 0, p < n, q <= p+a  -> DoublePhaseBounded (minimizers Hölder, gradient not guaranteed)
///   margin < 0 otherwise         -> CounterexampleRegion
RegularityVerdict classify(const GrowthParams& params);

/// Exact margin 1 + alpha/n - q/p (no validation).
double sharp_margin(double p, double q, double alpha, int n);

/// q <= p + alpha.
bool double_phase_bound(double p, double q, double alpha);

struct MoserSequence {
  std::vector<double> t;
  double sigma = 0.0;
  double gamma = 0.0;
  double increment = 0.0;  // sigma * (p + gamma - q)
  bool diverges = false;
  std::optional<long long> steps_to_target;
};

/// t[0] = t0, t[i+1] = t[i] + sigma (p + gamma - q), for max_iters steps.
MoserSequence moser_sequence(double t0, double sigma, double p, double gamma, double q, int max_iters,
                             std::optional<double> target = std::nullopt);

enum class Integrability { AllFiniteExponents, NotGuaranteed };

std::string_view to_string(Integrability i);

Integrability predicted_integrability(const GrowthParams& params);

}  // namespace ghostlab
