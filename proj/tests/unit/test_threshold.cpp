#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ghostlab/errors.hpp"
#include "ghostlab/threshold.hpp"

using namespace ghostlab;

namespace {

GrowthParams gp(double p, double q, double alpha, int n) { return {p, q, alpha, n, std::nullopt, std::nullopt}; }

}  // namespace

TEST(Classify, UniformWhenExponentsAgree) {
  const auto v = classify(gp(2, 2, 0.5, 3));
  EXPECT_EQ(v.regime, Regime::UniformSchauder);
  EXPECT_EQ(classify(gp(3, 3, 0.2, 5)).regime, Regime::UniformSchauder);
}

TEST(Classify, SharpConditionHolds) {
  const auto v = classify(gp(2, 2.9, 1, 2));
  EXPECT_EQ(v.regime, Regime::SharpSchauderHolds);
  EXPECT_NEAR(v.margin, 0.05, 1e-15);
}

TEST(Classify, CounterexampleRegion) {
  const auto v = classify(gp(2, 3.2, 1, 2));
  EXPECT_EQ(v.regime, Regime::CounterexampleRegion);
  EXPECT_NEAR(v.margin, -0.1, 1e-15);
}

TEST(Classify, DoublePhaseBoundedBelowDimension) {
  // p < n and q <= p + alpha, but past the sharp threshold.
  const auto v = classify(gp(2, 2.5, 0.5, 3));
  EXPECT_LT(v.margin, 0.0);
  EXPECT_EQ(v.regime, Regime::DoublePhaseBounded);
  // Same tuple with p = n falls through to the counterexample region.
  EXPECT_EQ(classify(gp(2, 2.5, 0.5, 2)).regime, Regime::Borderline);
  EXPECT_EQ(classify(gp(2, 2.55, 0.5, 2)).regime, Regime::CounterexampleRegion);
}

TEST(Classify, BorderlineOnlyAtExactEquality) {
  const auto v = classify(gp(2, 3, 1, 2));
  EXPECT_EQ(v.margin, 0.0);
  EXPECT_EQ(v.regime, Regime::Borderline);
  EXPECT_NE(classify(gp(2, std::nextafter(3.0, 4.0), 1, 2)).regime, Regime::Borderline);
  EXPECT_NE(classify(gp(2, std::nextafter(3.0, 2.0), 1, 2)).regime, Regime::Borderline);
}

TEST(Classify, ParameterErrors) {
  EXPECT_THROW(classify(gp(2, 1.5, 0.5, 2)), ParameterError);
  EXPECT_THROW(classify(gp(2, 3, 0.0, 2)), ParameterError);
  EXPECT_THROW(classify(gp(2, 3, 1.5, 2)), ParameterError);
  EXPECT_THROW(classify(gp(1, 3, 0.5, 2)), ParameterError);
  EXPECT_THROW(classify(gp(2, 3, 0.5, 1)), ParameterError);
}

TEST(Classify, MarginIsExactFormulaOnRandomTuples) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> pd(1.01, 6.0), gap(0.0, 1.0), ad(1e-6, 1.0);
  std::uniform_int_distribution<int> nd(2, 10);
  for (int k = 0; k < 10000; ++k) {
    const double p = pd(rng), q = p * (1.0 + gap(rng)), a = ad(rng);
    const int n = nd(rng);
    const auto v = classify(gp(p, q, a, n));
    ASSERT_EQ(v.margin, 1.0 + a / n - q / p);
    if (q == p) {
      ASSERT_EQ(v.regime, Regime::UniformSchauder);
    } else if (v.margin > 0) {
      ASSERT_EQ(v.regime, Regime::SharpSchauderHolds);
    } else if (v.margin < 0) {
      ASSERT_TRUE(v.regime == Regime::DoublePhaseBounded || v.regime == Regime::CounterexampleRegion);
      ASSERT_EQ(v.regime == Regime::DoublePhaseBounded, p < n && q <= p + a);
    }
  }
}

TEST(Classify, VerdictMonotoneInQ) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> pd(1.1, 5.0), ad(0.05, 1.0);
  std::uniform_int_distribution<int> nd(2, 6);
  for (int trial = 0; trial < 500; ++trial) {
    const double p = pd(rng), a = ad(rng);
    const int n = nd(rng);
    int borderline = 0, last = -1, crossings = 0;
    bool was_holding = true;
    for (int k = 0; k <= 400; ++k) {
      const double q = p + p * k / 400.0;
      const auto v = classify(gp(p, q, a, n));
      const int r = static_cast<int>(v.regime);
      ASSERT_GE(r, last) << "p=" << p << " q=" << q;
      last = r;
      borderline += v.regime == Regime::Borderline;
      const bool holding = v.regime == Regime::UniformSchauder || v.regime == Regime::SharpSchauderHolds;
      crossings += was_holding != holding;
      was_holding = holding;
    }
    EXPECT_LE(borderline, 1);
    EXPECT_EQ(crossings, 1);
  }
}

TEST(DoublePhaseBound, Examples) {
  EXPECT_TRUE(double_phase_bound(2, 2.5, 0.5));
  EXPECT_FALSE(double_phase_bound(2, 2.6, 0.5));
  EXPECT_TRUE(double_phase_bound(2, 2, 0.1));
  EXPECT_THROW(double_phase_bound(2, 1.9, 0.5), ParameterError);
  EXPECT_THROW(double_phase_bound(2, 2.5, 0.0), ParameterError);
}

TEST(Moser, ArithmeticSequence) {
  const auto s = moser_sequence(2, 1, 2, 1, 2.5, 5);
  const std::vector<double> want{2, 2.5, 3, 3.5, 4, 4.5};
  EXPECT_EQ(s.t, want);
  EXPECT_TRUE(s.diverges);
  EXPECT_EQ(s.increment, 0.5);
}

TEST(Moser, ZeroIncrementIsConstant) {
  const auto s = moser_sequence(2, 1, 2, 0.5, 2.5, 7);
  EXPECT_FALSE(s.diverges);
  EXPECT_EQ(s.increment, 0.0);
  for (double t : s.t) EXPECT_EQ(t, 2.0);
  EXPECT_FALSE(s.steps_to_target.has_value());
}

TEST(Moser, StepsToTarget) {
  const auto s = moser_sequence(2, 0.5, 2, 1, 2.5, 5, 10.0);
  ASSERT_TRUE(s.steps_to_target.has_value());
  EXPECT_EQ(*s.steps_to_target, 32);
  // Reached even when the recorded prefix is shorter than the step count.
  EXPECT_EQ(s.t.size(), 6u);
  EXPECT_EQ(moser_sequence(2, 0.5, 2, 1, 2.5, 5, 1.5).steps_to_target.value(), 0);
}

TEST(Moser, NegativeIncrementNeverReachesTarget) {
  const auto s = moser_sequence(3, 1, 2, 0.2, 3, 4, 10.0);
  EXPECT_FALSE(s.diverges);
  EXPECT_FALSE(s.steps_to_target.has_value());
  EXPECT_LT(s.t.back(), s.t.front());
}

TEST(Moser, PreconditionErrors) {
  EXPECT_THROW(moser_sequence(0.5, 1, 2, 1, 2, 3), ParameterError);
  EXPECT_THROW(moser_sequence(2, 0, 2, 1, 2, 3), ParameterError);
  EXPECT_THROW(moser_sequence(2, 1, 2, 1, 2, 0), ParameterError);
}

TEST(Moser, IncrementsReconstructOnRandomDraws) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> t0d(1, 10), sd(0.01, 3), pd(1.1, 4), gd(0, 2), qd(1.1, 6);
  for (int k = 0; k < 1000; ++k) {
    const double t0 = t0d(rng), sigma = sd(rng), p = pd(rng), gamma = gd(rng);
    // Every tenth draw lands exactly on the zero-increment boundary.
    const double q = k % 10 == 0 ? p + gamma : qd(rng);
    const auto s = moser_sequence(t0, sigma, p, gamma, q, 50);
    const double d = sigma * (p + gamma - q);
    ASSERT_EQ(s.diverges, d > 0.0);
    double tmax = 0.0;
    for (double t : s.t) tmax = std::max(tmax, std::abs(t));
    for (std::size_t i = 0; i + 1 < s.t.size(); ++i) {
      ASSERT_LE(std::abs((s.t[i + 1] - s.t[i]) - d), 2 * std::numeric_limits<double>::epsilon() * tmax);
    }
  }
}

TEST(Integrability, FollowsVerdict) {
  EXPECT_EQ(predicted_integrability(gp(2, 2.9, 1, 2)), Integrability::AllFiniteExponents);
  EXPECT_EQ(predicted_integrability(gp(2, 3.2, 1, 2)), Integrability::NotGuaranteed);
  EXPECT_EQ(predicted_integrability(gp(3, 3, 0.2, 5)), Integrability::AllFiniteExponents);
  EXPECT_EQ(predicted_integrability(gp(2, 3, 1, 2)), Integrability::NotGuaranteed);
}

TEST(Integrability, ImpliesNonnegativeMargin) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> pd(1.1, 4), gap(0, 1), ad(0.01, 1);
  for (int k = 0; k < 2000; ++k) {
    const double p = pd(rng);
    const auto g = gp(p, p * (1 + gap(rng)), ad(rng), 2 + k % 4);
    if (predicted_integrability(g) == Integrability::AllFiniteExponents) ASSERT_GE(classify(g).margin, 0.0);
  }
}

TEST(Regime, NamesRoundTrip) {
  for (Regime r : {Regime::UniformSchauder, Regime::SharpSchauderHolds, Regime::Borderline,
                   Regime::DoublePhaseBounded, Regime::CounterexampleRegion}) {
    EXPECT_EQ(regime_from_string(to_string(r)), r);
  }
  EXPECT_FALSE(regime_from_string("Smooth").has_value());
}
