#include "ghostlab/regularity_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ghostlab/errors.hpp"
#include "ghostlab/numerics.hpp"

namespace ghostlab {

namespace {

// Differences below this fraction of the field scale are treated as round-off.
constexpr double kRoundoffFraction = 1e-10;

bool in_square(Point x, Point center, double half_width) {
  return std::abs(x.x1 - center.x1) <= half_width && std::abs(x.x2 - center.x2) <= half_width;
}

}  // namespace

GradientVector vp_map(GradientVector z, double p) {
  if (!(p > 1.0)) throw ParameterError("vp_map requires p > 1");
  const double r = z.norm();
  if (r == 0.0) {
    if (p < 2.0) throw SingularityError("vp_map is singular at z = 0 for p < 2");
    return {0.0, 0.0};
  }
  return std::pow(r, 0.5 * (p - 2.0)) * z;
}

double LatticeOffset::length() const { return std::hypot(static_cast<double>(di), static_cast<double>(dj)); }

DifferenceField::DifferenceField(Grid grid, LatticeOffset offset, std::vector<GradientVector> values)
    : grid_(grid), offset_(offset), values_(std::move(values)) {
  const auto expected = static_cast<std::size_t>(i_end() - i_begin()) * static_cast<std::size_t>(j_end() - j_begin());
  if (values_.size() != expected) throw SizeError("difference field size does not match its index range");
}

const GradientVector& DifferenceField::operator()(int i, int j) const {
  return values_[static_cast<std::size_t>(j - j_begin()) * (i_end() - i_begin()) + (i - i_begin())];
}

DifferenceField tau_h(const CellGradientField& field, LatticeOffset offset) {
  const int m = field.grid().m();
  if (offset.di == 0 && offset.dj == 0) throw SizeError("difference offset must be nonzero");
  if (std::abs(offset.di) >= m || std::abs(offset.dj) >= m) {
    throw SizeError("difference offset (" + std::to_string(offset.di) + ", " + std::to_string(offset.dj) +
                    ") exceeds the grid");
  }
  const int i0 = std::max(0, -offset.di), i1 = m - std::max(0, offset.di);
  const int j0 = std::max(0, -offset.dj), j1 = m - std::max(0, offset.dj);
  std::vector<GradientVector> out;
  out.reserve(static_cast<std::size_t>(i1 - i0) * (j1 - j0));
  for (int j = j0; j < j1; ++j) {
    for (int i = i0; i < i1; ++i) out.push_back(field(i + offset.di, j + offset.dj) - field(i, j));
  }
  return DifferenceField(field.grid(), offset, std::move(out));
}

CellGradientField vp_field(const CellGradientField& gradients, double p) {
  std::vector<GradientVector> out;
  out.reserve(gradients.values().size());
  for (const GradientVector& z : gradients.values()) out.push_back(vp_map(z, p));
  return CellGradientField(gradients.grid(), std::move(out));
}

double caccioppoli_lhs(const CellGradientField& gradients, double p, LatticeOffset offset, Point center,
                       double half_width) {
  const DifferenceField diff = tau_h(vp_field(gradients, p), offset);
  const Grid& g = gradients.grid();
  const double area = g.h() * g.h();
  CompensatedSum sum;
  for (int j = 0; j < g.m(); ++j) {
    for (int i = 0; i < g.m(); ++i) {
      if (!in_square(g.cell_center(i, j), center, half_width)) continue;
      if (i < diff.i_begin() || i >= diff.i_end() || j < diff.j_begin() || j >= diff.j_end()) {
        throw SizeError("shifted cell leaves the grid; use a smaller square or offset");
      }
      sum.add(area * diff(i, j).norm_squared());
    }
  }
  return sum.value();
}

double caccioppoli_energy(const CellGradientField& gradients, double q, Point center, double half_width) {
  const Grid& g = gradients.grid();
  const double area = g.h() * g.h();
  CompensatedSum sum;
  for (int j = 0; j < g.m(); ++j) {
    for (int i = 0; i < g.m(); ++i) {
      if (!in_square(g.cell_center(i, j), center, half_width)) continue;
      sum.add(area * (1.0 + std::pow(gradients(i, j).norm(), q)));
    }
  }
  return sum.value();
}

double caccioppoli_ratio(const CellGradientField& gradients, double p, double q, double s_order, LatticeOffset offset,
                         const CaccioppoliGeometry& geometry) {
  const double step = offset.length() * gradients.grid().h();
  if (!(step < 0.05)) throw ParameterError("Caccioppoli offsets need |h| < 0.05");
  const double lhs = caccioppoli_lhs(gradients, p, offset, geometry.center, geometry.inner_half_width);
  const double energy = caccioppoli_energy(gradients, q, geometry.center, geometry.outer_half_width);
  const double rhs = std::pow(step, 2.0 * s_order) * energy;
  if (!(rhs > 0.0)) throw DegenerateError("Caccioppoli right-hand side vanished");
  return lhs / rhs;
}

CaccioppoliFit fit_caccioppoli(const CellGradientField& gradients, double p, double q,
                               const std::vector<LatticeOffset>& offsets, const CaccioppoliGeometry& geometry) {
  const double h = gradients.grid().h();
  std::vector<double> steps;
  for (const auto& o : offsets) steps.push_back(o.length() * h);
  std::vector<double> distinct = steps;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 4 || distinct.back() < 4.0 * distinct.front()) {
    throw ParameterError("Caccioppoli fit needs >= 4 distinct |h| spanning a factor >= 4");
  }
  CaccioppoliFit fit;
  fit.h_values = steps;
  const double energy = caccioppoli_energy(gradients, q, geometry.center, geometry.outer_half_width);

  // Scale for deciding that a difference is round-off.
  double vmax = 0.0;
  for (const auto& z : gradients.values()) vmax = std::max(vmax, std::pow(z.norm(), 0.5 * p));
  const double inner_area = std::pow(2.0 * geometry.inner_half_width, 2);
  const double zero_level = std::pow(kRoundoffFraction * (1.0 + vmax), 2) * inner_area;

  bool all_zero = true;
  bool any_zero = false;
  for (const auto& o : offsets) {
    const double lhs = caccioppoli_lhs(gradients, p, o, geometry.center, geometry.inner_half_width);
    fit.lhs_values.push_back(lhs);
    const bool zero = lhs <= zero_level;
    all_zero = all_zero && zero;
    any_zero = any_zero || zero;
  }
  if (all_zero) {
    fit.exact_regularity = true;
    fit.s_order = std::numeric_limits<double>::infinity();
    fit.C = 0.0;
    fit.residual = 0.0;
    return fit;
  }
  if (any_zero) throw DegenerateError("Caccioppoli differences vanish for some offsets only; cannot fit a power law");

  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    lx.push_back(std::log(steps[k]));
    ly.push_back(std::log(fit.lhs_values[k]));
  }
  const LineFit line = fit_line(lx, ly);
  fit.s_order = 0.5 * line.slope;
  fit.C = std::exp(line.intercept) / energy;
  fit.residual = line.rms_residual;
  return fit;
}

HolderEstimate holder_exponent(const CellGradientField& gradients, Point center, const std::vector<double>& radii) {
  const Grid& g = gradients.grid();
  if (radii.size() < 4) throw ParameterError("Hölder fit needs at least four radii");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] >= 2.0 * g.h())) throw ParameterError("Hölder radii must be >= 2h");
    if (k > 0 && !(radii[k] < radii[k - 1])) throw ParameterError("Hölder radii must decrease strictly");
  }

  HolderEstimate est;
  est.radii = radii;
  double scale = 0.0;
  for (double r : radii) {
    double lo1 = std::numeric_limits<double>::infinity(), hi1 = -lo1;
    double lo2 = lo1, hi2 = -lo1;
    bool any = false;
    for (int j = 0; j < g.m(); ++j) {
      for (int i = 0; i < g.m(); ++i) {
        if (!in_square(g.cell_center(i, j), center, r)) continue;
        const GradientVector z = gradients(i, j);
        lo1 = std::min(lo1, z.z1);
        hi1 = std::max(hi1, z.z1);
        lo2 = std::min(lo2, z.z2);
        hi2 = std::max(hi2, z.z2);
        scale = std::max({scale, std::abs(z.z1), std::abs(z.z2)});
        any = true;
      }
    }
    if (!any) throw ParameterError("Hölder square contains no cell center");
    est.oscillations.push_back(std::max(hi1 - lo1, hi2 - lo2));
  }

  const double zero_level = kRoundoffFraction * (1.0 + scale);
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (est.oscillations[k] <= zero_level) continue;
    lx.push_back(std::log(radii[k]));
    ly.push_back(std::log(est.oscillations[k]));
  }
  if (lx.size() < 2) {
    est.zero_oscillation = true;
    est.exponent = HolderEstimate::kSmoothSentinel;
    est.fit_quality = 1.0;
    return est;
  }
  const LineFit line = fit_line(lx, ly);
  est.exponent = std::clamp(line.slope, 0.0, HolderEstimate::kSmoothSentinel);
  est.fit_quality = line.r_squared;
  return est;
}

}  // namespace ghostlab
