#include "ghostlab/threshold.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "ghostlab/errors.hpp"

namespace ghostlab {

void GrowthParams::validate() const {
  if (!std::isfinite(p) || !std::isfinite(q) || !(p > 1.0) || q < p) {
    throw ParameterError("growth exponents must satisfy 1 < p <= q");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0, 1]");
  if (n < 2) throw ParameterError("dimension n must be >= 2");
  if (beta && !(*beta > 0.0 && *beta <= 1.0)) throw ParameterError("beta must lie in (0, 1]");
  if (s_exp && !(*s_exp > 1.0)) throw ParameterError("second-phase exponent must exceed 1");
}

namespace {

constexpr std::array<std::pair<Regime, std::string_view>, 5> kRegimeNames{{
    {Regime::UniformSchauder, "UniformSchauder"},
    {Regime::SharpSchauderHolds, "SharpSchauderHolds"},
    {Regime::Borderline, "Borderline"},
    {Regime::DoublePhaseBounded, "DoublePhaseBounded"},
    {Regime::CounterexampleRegion, "CounterexampleRegion"},
}};

}  // namespace

std::string_view to_string(Regime r) {
  for (const auto& [regime, name] : kRegimeNames) {
    if (regime == r) return name;
  }
  return "?";
}

std::optional<Regime> regime_from_string(std::string_view s) {
  for (const auto& [regime, name] : kRegimeNames) {
    if (name == s) return regime;
  }
  return std::nullopt;
}

double sharp_margin(double p, double q, double alpha, int n) {
  return 1.0 + alpha / static_cast<double>(n) - q / p;
}

bool double_phase_bound(double p, double q, double alpha) {
  if (!(p > 1.0) || q < p) throw ParameterError("growth exponents must satisfy 1 < p <= q");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0, 1]");
  return q <= p + alpha;
}

RegularityVerdict classify(const GrowthParams& params) {
  params.validate();
  RegularityVerdict v;
  v.margin = sharp_margin(params.p, params.q, params.alpha, params.n);
  if (params.q == params.p) {
    v.regime = Regime::UniformSchauder;
  } else if (v.margin == 0.0) {
    v.regime = Regime::Borderline;
  } else if (v.margin > 0.0) {
    v.regime = Regime::SharpSchauderHolds;
  } else if (params.p < params.n && double_phase_bound(params.p, params.q, params.alpha)) {
    v.regime = Regime::DoublePhaseBounded;
  } else {
    v.regime = Regime::CounterexampleRegion;
  }
  return v;
}

MoserSequence moser_sequence(double t0, double sigma, double p, double gamma, double q, int max_iters,
                             std::optional<double> target) {
  if (!(t0 >= 1.0)) throw ParameterError("t0 must be >= 1");
  if (!(sigma > 0.0)) throw ParameterError("sigma must be > 0");
  if (max_iters < 1) throw ParameterError("max_iters must be >= 1");

  MoserSequence seq;
  seq.sigma = sigma;
  seq.gamma = gamma;
  seq.increment = sigma * (p + gamma - q);
  seq.diverges = seq.increment > 0.0;

  seq.t.reserve(static_cast<std::size_t>(max_iters) + 1);
  seq.t.push_back(t0);
  for (int i = 0; i < max_iters; ++i) seq.t.push_back(seq.t.back() + seq.increment);

  if (target && seq.diverges) {
    // Continue the same recurrence past max_iters if needed; fall back to the
    // closed form when the walk would be absurdly long.
    const double estimate = std::ceil((*target - t0) / seq.increment);
    if (estimate > 1e8) {
      seq.steps_to_target = static_cast<long long>(estimate);
    } else {
      long long i = 0;
      double t = t0;
      while (t < *target) {
        t += seq.increment;
        ++i;
      }
      seq.steps_to_target = i;
    }
  }
  return seq;
}

std::string_view to_string(Integrability i) {
  return i == Integrability::AllFiniteExponents ? "AllFiniteExponents" : "NotGuaranteed";
}

Integrability predicted_integrability(const GrowthParams& params) {
  const Regime r = classify(params).regime;
  return (r == Regime::SharpSchauderHolds || r == Regime::UniformSchauder) ? Integrability::AllFiniteExponents
                                                                           : Integrability::NotGuaranteed;
}

}  // namespace ghostlab
