#include "ghostlab/integrands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "ghostlab/errors.hpp"

namespace ghostlab {

double SymMatrix2::lambda_min() const {
  const double mean = 0.5 * (a11 + a22);
  const double radius = std::hypot(0.5 * (a11 - a22), a12);
  return mean - radius;
}

double SymMatrix2::lambda_max() const {
  const double mean = 0.5 * (a11 + a22);
  const double radius = std::hypot(0.5 * (a11 - a22), a12);
  return mean + radius;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_holder_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ParameterError("coefficient Hölder exponent must lie in (0, 1], got " + std::to_string(alpha));
  }
}

}  // namespace

CoefficientField::CoefficientField(CoefficientKind kind, double amplitude)
    : kind_(std::move(kind)), amplitude_(amplitude) {
  if (!(amplitude_ >= 0.0) || !std::isfinite(amplitude_)) {
    throw ParameterError("coefficient amplitude must be finite and nonnegative");
  }
  std::visit(overloaded{
                 [](const ConstantCoefficient&) {},
                 [](const DistancePower& d) {
                   check_holder_alpha(d.alpha);
                   if (!std::isfinite(d.offset)) throw ParameterError("distance-power offset must be finite");
                 },
                 [](const SmoothedStep& s) {
                   check_holder_alpha(s.alpha);
                   if (!(s.width > 0.0) || !std::isfinite(s.center)) {
                     throw ParameterError("smoothed step needs finite center and positive width");
                   }
                 },
             },
             kind_);
}

double CoefficientField::operator()(Point x) const {
  return std::visit(overloaded{
                        [&](const ConstantCoefficient&) { return amplitude_; },
                        [&](const DistancePower& d) { return amplitude_ * std::pow(std::abs(x.x1 - d.offset), d.alpha); },
                        [&](const SmoothedStep& s) {
                          const double t = std::clamp((x.x1 - s.center) / s.width, 0.0, 1.0);
                          return amplitude_ * std::pow(t, s.alpha);
                        },
                    },
                    kind_);
}

double CoefficientField::alpha() const {
  return std::visit(overloaded{
                        [](const ConstantCoefficient&) { return 1.0; },
                        [](const DistancePower& d) { return d.alpha; },
                        [](const SmoothedStep& s) { return s.alpha; },
                    },
                    kind_);
}

double CoefficientField::holder_seminorm() const {
  return std::visit(overloaded{
                        [](const ConstantCoefficient&) { return 0.0; },
                        [&](const DistancePower&) { return amplitude_; },
                        [&](const SmoothedStep& s) { return amplitude_ / std::pow(s.width, s.alpha); },
                    },
                    kind_);
}

// ---------------------------------------------------------------------------

void IntegrandSpec::validate() const {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ParameterError("mu must be finite and nonnegative");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw ParameterError("eps must be finite and nonnegative");
  std::visit(overloaded{
                 [](const PPower& f) {
                   if (!(f.p > 1.0) || !std::isfinite(f.p)) throw ParameterError("PPower requires p > 1");
                 },
                 [](const DoublePhase& f) {
                   if (!(f.p > 1.0 && f.p <= f.q) || !std::isfinite(f.q)) {
                     throw ParameterError("DoublePhase requires 1 < p <= q");
                   }
                 },
                 [](const LogMultiphase& f) {
                   if (!(f.q > 1.0 && f.s > 1.0) || !std::isfinite(f.q) || !std::isfinite(f.s)) {
                     throw ParameterError("LogMultiphase requires q > 1 and s > 1");
                   }
                 },
             },
             family);
}

bool IntegrandSpec::smooth_at_origin() const {
  return std::visit(overloaded{
                        [](const PPower& f) { return f.p >= 2.0; },
                        [](const DoublePhase& f) { return f.p >= 2.0; },
                        [](const LogMultiphase& f) { return f.q >= 2.0 && f.s >= 2.0; },
                    },
                    family);
}

double IntegrandSpec::lower_exponent() const {
  return std::visit(overloaded{
                        [](const PPower& f) { return f.p; },
                        [](const DoublePhase& f) { return f.p; },
                        [](const LogMultiphase&) { return 1.0; },
                    },
                    family);
}

double IntegrandSpec::upper_exponent() const {
  return std::visit(overloaded{
                        [](const PPower& f) { return f.p; },
                        [](const DoublePhase& f) { return f.q; },
                        [](const LogMultiphase& f) { return std::max(f.q, f.s); },
                    },
                    family);
}

namespace {

struct RadialDerivs {
  double value;
  double d1_over_rho;  // phi'(rho) / rho
  double d2;           // phi''(rho)
};

RadialDerivs radial(double exponent, double rho) {
  if (exponent == 0.0) {
    const double l = std::log1p(rho);
    const double inv = 1.0 / (1.0 + rho);
    const double ratio = rho > 0.0 ? l / rho : 1.0;
    return {rho * l, ratio + inv, inv + inv * inv};
  }
  if (rho == 0.0) {
    // Only reached for exponent >= 2 (require_smooth).
    const double lim = exponent == 2.0 ? 2.0 : 0.0;
    return {0.0, lim, lim};
  }
  const double pm2 = std::pow(rho, exponent - 2.0);
  return {pm2 * rho * rho, exponent * pm2, exponent * (exponent - 1.0) * pm2};
}

void check_point(Point x) {
  if (!(x.x1 >= 0.0 && x.x1 <= 1.0 && x.x2 >= 0.0 && x.x2 <= 1.0)) {
    throw DomainError("evaluation point outside the unit square");
  }
}

void check_gradient(GradientVector z) {
  if (!std::isfinite(z.z1) || !std::isfinite(z.z2)) throw ParameterError("gradient components must be finite");
}

}  // namespace

PointIntegrand::PointIntegrand(const IntegrandSpec& spec, const CoefficientField& coeff_a,
                               const CoefficientField& coeff_b, Point x)
    : mu_(spec.mu), smooth_at_origin_(spec.smooth_at_origin()) {
  spec.validate();
  check_point(x);
  auto add = [&](double w, double e) { terms_[count_++] = {w, e}; };
  std::visit(overloaded{
                 [&](const PPower& f) { add(coeff_a(x) + spec.eps, f.p); },
                 [&](const DoublePhase& f) {
                   add(1.0, f.p);
                   add(coeff_a(x) + spec.eps, f.q);
                 },
                 [&](const LogMultiphase& f) {
                   add(1.0, 0.0);
                   add(coeff_a(x) + spec.eps, f.q);
                   add(coeff_b(x) + spec.eps, f.s);
                 },
             },
             spec.family);
}

double PointIntegrand::rho(GradientVector z) const {
  check_gradient(z);
  return std::sqrt(z.norm_squared() + mu_ * mu_);
}

void PointIntegrand::require_smooth(double rho) const {
  if (rho == 0.0 && !smooth_at_origin_) {
    throw SingularityError("density is not differentiable at z = 0 with mu = 0; regularize with mu > 0");
  }
}

double PointIntegrand::value(GradientVector z) const {
  const double r = rho(z);
  double sum = 0.0;
  for (int k = 0; k < count_; ++k) {
    const Term& t = terms_[k];
    if (t.weight == 0.0) continue;
    sum += t.weight * (t.exponent == 0.0 ? r * std::log1p(r) : std::pow(r, t.exponent));
  }
  return sum;
}

double PointIntegrand::value_and_gradient(GradientVector z, GradientVector& grad) const {
  const double r = rho(z);
  require_smooth(r);
  double sum = 0.0;
  double scale = 0.0;
  for (int k = 0; k < count_; ++k) {
    const Term& t = terms_[k];
    if (t.weight == 0.0) continue;
    const RadialDerivs d = radial(t.exponent, r);
    sum += t.weight * d.value;
    scale += t.weight * d.d1_over_rho;
  }
  grad = scale * z;
  return sum;
}

GradientVector PointIntegrand::gradient(GradientVector z) const {
  GradientVector g;
  value_and_gradient(z, g);
  return g;
}

SymMatrix2 PointIntegrand::hessian(GradientVector z) const {
  const double r = rho(z);
  require_smooth(r);
  double iso = 0.0;
  double aniso = 0.0;
  for (int k = 0; k < count_; ++k) {
    const Term& t = terms_[k];
    if (t.weight == 0.0) continue;
    const RadialDerivs d = radial(t.exponent, r);
    iso += t.weight * d.d1_over_rho;
    aniso += t.weight * (d.d2 - d.d1_over_rho);
  }
  // H = iso I + aniso z z^T / rho^2
  const double inv_r2 = r > 0.0 ? 1.0 / (r * r) : 0.0;
  return {iso + aniso * z.z1 * z.z1 * inv_r2, aniso * z.z1 * z.z2 * inv_r2, iso + aniso * z.z2 * z.z2 * inv_r2};
}

double eval_density(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                    Point x, GradientVector z) {
  return PointIntegrand(spec, coeff_a, coeff_b, x).value(z);
}

GradientVector grad_density(const IntegrandSpec& spec, const CoefficientField& coeff_a,
                            const CoefficientField& coeff_b, Point x, GradientVector z) {
  return PointIntegrand(spec, coeff_a, coeff_b, x).gradient(z);
}

SymMatrix2 hess_density(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                        Point x, GradientVector z) {
  return PointIntegrand(spec, coeff_a, coeff_b, x).hessian(z);
}

double ellipticity_ratio(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                         Point x, GradientVector z) {
  const SymMatrix2 h = hess_density(spec, coeff_a, coeff_b, x, z);
  const double lo = h.lambda_min();
  const double hi = h.lambda_max();
  if (lo <= 1e-12 * std::max(1.0, std::abs(hi))) {
    throw DegenerateError("Hessian is not positive definite; ellipticity ratio undefined");
  }
  return hi / lo;
}

double ellipticity_ratio_on_square(const IntegrandSpec& spec, const CoefficientField& coeff_a,
                                   const CoefficientField& coeff_b, Point center, double half_width,
                                   GradientVector z, int samples) {
  if (samples < 1 || !(half_width > 0.0)) throw ParameterError("need samples >= 1 and half_width > 0");
  const double lo1 = std::max(0.0, center.x1 - half_width), hi1 = std::min(1.0, center.x1 + half_width);
  const double lo2 = std::max(0.0, center.x2 - half_width), hi2 = std::min(1.0, center.x2 + half_width);
  if (!(lo1 < hi1 && lo2 < hi2)) throw DomainError("square does not meet the unit square");

  double sup_max = 0.0;
  double inf_min = std::numeric_limits<double>::infinity();
  for (int j = 0; j < samples; ++j) {
    for (int i = 0; i < samples; ++i) {
      const Point x{lo1 + (i + 0.5) * (hi1 - lo1) / samples, lo2 + (j + 0.5) * (hi2 - lo2) / samples};
      const SymMatrix2 h = hess_density(spec, coeff_a, coeff_b, x, z);
      sup_max = std::max(sup_max, h.lambda_max());
      inf_min = std::min(inf_min, h.lambda_min());
    }
  }
  if (inf_min <= 1e-12 * std::max(1.0, sup_max)) {
    throw DegenerateError("Hessian is not positive definite on the square");
  }
  return sup_max / inf_min;
}

IntegrandSpec ghost_regularize(const IntegrandSpec& spec, double eps, double mu) {
  if (!(eps >= 0.0) || !(mu >= 0.0)) throw ParameterError("ghost regularization needs eps >= 0 and mu >= 0");
  IntegrandSpec out = spec;
  out.eps = eps;
  out.mu = mu;
  return out;
}

}  // namespace ghostlab
