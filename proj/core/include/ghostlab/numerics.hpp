#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ghostlab {

/// Neumaier-compensated running sum. Summation order is the call order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Ordinary least-squares line y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;  // 1 when the data has no spread in y
  double rms_residual = 0.0;
};

/// Throws DegenerateError for fewer than two points or constant x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Shortest round-trip decimal text for v ("inf", "-inf", "nan" for non-finite).
std::string format_number(double v);

/// Parses a full token as a double (accepts inf/nan); nullopt on failure.
std::optional<double> parse_number(std::string_view text);

}  // namespace ghostlab
