#pragma once

#include <algorithm>
#include <vector>

#include "ghostlab/grid.hpp"
#include "ghostlab/integrands.hpp"

namespace ghostlab {

/// |z|^{(p-2)/2} z.  Throws SingularityError at z = 0 when p < 2.
GradientVector vp_map(GradientVector z, double p);

/// Integer cell offset h = (di, dj) in lattice units.
struct LatticeOffset {
  int di = 1;
  int dj = 0;

  double length() const;
};

/// f(x + h) - f(x) on the cells for which x + h is still a cell.
class DifferenceField {
 public:
  DifferenceField(Grid grid, LatticeOffset offset, std::vector<GradientVector> values);

  const Grid& grid() const { return grid_; }
  LatticeOffset offset() const { return offset_; }
  // Valid cell index ranges [i_begin, i_end) x [j_begin, j_end).
  int i_begin() const { return std::max(0, -offset_.di); }
  int i_end() const { return grid_.m() - std::max(0, offset_.di); }
  int j_begin() const { return std::max(0, -offset_.dj); }
  int j_end() const { return grid_.m() - std::max(0, offset_.dj); }
  const GradientVector& operator()(int i, int j) const;
  std::span<const GradientVector> values() const { return values_; }

 private:
  Grid grid_;
  LatticeOffset offset_;
  std::vector<GradientVector> values_;
};

/// Forward difference by a lattice offset.  Throws SizeError when the offset
/// is zero or leaves no valid cell.
DifferenceField tau_h(const CellGradientField& field, LatticeOffset offset);

/// Applies vp_map cellwise.
CellGradientField vp_field(const CellGradientField& gradients, double p);

/// Concentric axis-aligned squares standing in for B_{R/2} and B_R.
struct CaccioppoliGeometry {
  Point center{0.5, 0.5};
  double inner_half_width = 0.25;
  double outer_half_width = 0.45;
};

/// sum over cells of the inner square of h^2 |tau_h V_p(Du)|^2.
double caccioppoli_lhs(const CellGradientField& gradients, double p, LatticeOffset offset, Point center,
                       double half_width);

/// sum over cells of the outer square of h^2 (1 + |Du|^q).
double caccioppoli_energy(const CellGradientField& gradients, double q, Point center, double half_width);

/// LHS / (|h|^{2 s_order} * energy).  Requires |offset| h < 0.05.
double caccioppoli_ratio(const CellGradientField& gradients, double p, double q, double s_order, LatticeOffset offset,
                         const CaccioppoliGeometry& geometry = {});

struct CaccioppoliFit {
  double C = 0.0;        // exp(intercept) / energy: dimensionless
  double s_order = 0.0;  // slope / 2; +inf when every difference vanishes
  double residual = 0.0; // RMS of the log-log regression
  bool exact_regularity = false;
  std::vector<double> h_values;
  std::vector<double> lhs_values;
};

/// log-log regression of the Caccioppoli LHS against |h|.  Needs at least four
/// distinct |h| values spanning a factor >= 4; the shifted inner square must
/// stay on the grid (SizeError otherwise).  Unlike caccioppoli_ratio, |h| is
/// not capped at 0.05.
CaccioppoliFit fit_caccioppoli(const CellGradientField& gradients, double p, double q,
                               const std::vector<LatticeOffset>& offsets, const CaccioppoliGeometry& geometry = {});

struct HolderEstimate {
  static constexpr double kSmoothSentinel = 1.5;

  double exponent = 0.0;     // clamped to [0, 1.5]
  double fit_quality = 0.0;  // R^2 of the log-log fit
  bool zero_oscillation = false;
  std::vector<double> radii;
  std::vector<double> oscillations;
};

/// Oscillation decay of Du over squares of half-width r about center.
/// radii: at least four, strictly decreasing, each >= 2h.
HolderEstimate holder_exponent(const CellGradientField& gradients, Point center, const std::vector<double>& radii);

}  // namespace ghostlab
