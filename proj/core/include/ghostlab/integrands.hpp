#pragma once

#include <cmath>
#include <variant>

namespace ghostlab {

/// Point of the unit square [0,1]^2.
struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Gradient (the z argument of an integrand), n = 2.
struct GradientVector {
  double z1 = 0.0;
  double z2 = 0.0;

  double norm() const { return std::hypot(z1, z2); }
  double norm_squared() const { return z1 * z1 + z2 * z2; }

  friend GradientVector operator+(GradientVector a, GradientVector b) { return {a.z1 + b.z1, a.z2 + b.z2}; }
  friend GradientVector operator-(GradientVector a, GradientVector b) { return {a.z1 - b.z1, a.z2 - b.z2}; }
  friend GradientVector operator*(double s, GradientVector a) { return {s * a.z1, s * a.z2}; }
  friend bool operator==(const GradientVector&, const GradientVector&) = default;
};

/// Symmetric 2x2 matrix [[a11, a12], [a12, a22]].
struct SymMatrix2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;

  double lambda_min() const;
  double lambda_max() const;
};

// ---------------------------------------------------------------------------
// Coefficient fields
// ---------------------------------------------------------------------------

struct ConstantCoefficient {};

/// amplitude * |x1 - offset|^alpha: vanishes on the line x1 = offset.
struct DistancePower {
  double alpha = 1.0;
  double offset = 0.5;
};

/// amplitude * phi((x1 - center) / width) with phi(t) = clamp(t, 0, 1)^alpha.
struct SmoothedStep {
  double alpha = 1.0;
  double center = 0.5;
  double width = 0.25;
};

using CoefficientKind = std::variant<ConstantCoefficient, DistancePower, SmoothedStep>;

/// Closed-form nonnegative Hölder-continuous coefficient on [0,1]^2.
class CoefficientField {
 public:
  CoefficientField() = default;
  CoefficientField(CoefficientKind kind, double amplitude);

  static CoefficientField constant(double c0) { return {ConstantCoefficient{}, c0}; }
  static CoefficientField distance_power(double alpha, double offset, double amplitude = 1.0) {
    return {DistancePower{alpha, offset}, amplitude};
  }
  static CoefficientField smoothed_step(double alpha, double center, double width, double amplitude = 1.0) {
    return {SmoothedStep{alpha, center, width}, amplitude};
  }

  double operator()(Point x) const;

  const CoefficientKind& kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  /// Hölder exponent of the closed form (1 for constants).
  double alpha() const;
  /// Exact Hölder seminorm sup |f(x)-f(y)| / |x-y|^alpha of the closed form.
  double holder_seminorm() const;

 private:
  CoefficientKind kind_ = ConstantCoefficient{};
  double amplitude_ = 0.0;
};

// ---------------------------------------------------------------------------
// Integrand families
// ---------------------------------------------------------------------------

/// c(x) |z|^p
struct PPower {
  double p = 2.0;
};

/// |z|^p + a(x) |z|^q
struct DoublePhase {
  double p = 2.0;
  double q = 3.0;
};

/// |z| log(1 + |z|) + a(x) |z|^q + b(x) |z|^s
struct LogMultiphase {
  double q = 2.0;
  double s = 2.0;
};

using IntegrandFamily = std::variant<PPower, DoublePhase, LogMultiphase>;

/// An integrand family together with its ghost regularization (mu, eps).
///
/// With rho = (|z|^2 + mu^2)^{1/2}, every |z| in the family formula is
/// replaced by rho and every phase coefficient c is lifted to c + eps.
/// At mu = eps = 0 the densities are the unregularized ones.
struct IntegrandSpec {
  IntegrandFamily family = PPower{};
  double mu = 0.0;
  double eps = 0.0;

  /// Throws ParameterError when the family exponents or (mu, eps) are invalid.
  void validate() const;

  /// True when the density is C^2 at z = 0 even with mu = 0.
  bool smooth_at_origin() const;

  /// Exponent of the leading lower-growth term (p, p, or 1 for LogMultiphase).
  double lower_exponent() const;
  /// Exponent of the leading upper-growth term (p, q, or max(q, s)).
  double upper_exponent() const;
};

/// The density frozen at one point x: a weighted sum of radial profiles in
/// rho = (|z|^2 + mu^2)^{1/2}.  Built once per quadrature point by the solver.
class PointIntegrand {
 public:
  /// Validates spec and x.
  PointIntegrand(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                 Point x);

  double value(GradientVector z) const;
  GradientVector gradient(GradientVector z) const;
  SymMatrix2 hessian(GradientVector z) const;
  /// value and gradient together (one pass).
  double value_and_gradient(GradientVector z, GradientVector& grad) const;

 private:
  struct Term {
    double weight;
    double exponent;  // 0 marks the rho log(1 + rho) profile
  };
  double rho(GradientVector z) const;
  void require_smooth(double rho) const;

  Term terms_[3]{};
  int count_ = 0;
  double mu_ = 0.0;
  bool smooth_at_origin_ = true;
};

// Density, gradient, and Hessian in z.  coeff_a plays c(x) for PPower and
// a(x) otherwise; coeff_b is b(x) for LogMultiphase and ignored elsewhere.

double eval_density(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                    Point x, GradientVector z);

GradientVector grad_density(const IntegrandSpec& spec, const CoefficientField& coeff_a,
                            const CoefficientField& coeff_b, Point x, GradientVector z);

SymMatrix2 hess_density(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                        Point x, GradientVector z);

/// lambda_max / lambda_min of hess_density. Throws DegenerateError when
/// lambda_min <= 1e-12 * max(1, lambda_max).
double ellipticity_ratio(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                         Point x, GradientVector z);

/// Nonlocal ratio sup_x lambda_max(x, z) / inf_x lambda_min(x, z) over the
/// cell centers of a samples x samples lattice covering the square
/// [center - half_width, center + half_width]^2 clipped to the unit square.
double ellipticity_ratio_on_square(const IntegrandSpec& spec, const CoefficientField& coeff_a,
                                   const CoefficientField& coeff_b, Point center, double half_width,
                                   GradientVector z, int samples = 16);

/// Copy of spec with (eps, mu) set.
IntegrandSpec ghost_regularize(const IntegrandSpec& spec, double eps, double mu);

}  // namespace ghostlab
