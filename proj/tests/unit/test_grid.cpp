#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "ghostlab/errors.hpp"
#include "ghostlab/grid.hpp"
#include "ghostlab/numerics.hpp"
#include "quadrature_oracle.hpp"

using namespace ghostlab;

namespace {

const CoefficientField kOne = CoefficientField::constant(1.0);

}  // namespace

TEST(MakeGrid, Sizes) {
  EXPECT_EQ(make_grid(4).node_count(), 25u);
  EXPECT_EQ(make_grid(64).h(), 1.0 / 64);
  EXPECT_EQ(make_grid(64).h() * 64, 1.0);
  EXPECT_THROW(make_grid(3), SizeError);
  EXPECT_THROW(make_grid(-1), SizeError);
}

TEST(DiscreteField, BoundaryMaskMatchesBorder) {
  const Grid g = make_grid(5);
  const DiscreteField f(g);
  int flagged = 0;
  for (int j = 0; j <= 5; ++j) {
    for (int i = 0; i <= 5; ++i) {
      const bool border = i == 0 || j == 0 || i == 5 || j == 5;
      EXPECT_EQ(f.is_boundary(g.node_index(i, j)), border);
      flagged += border;
    }
  }
  EXPECT_EQ(flagged, 20);
}

TEST(DiscreteField, RejectsNonFiniteAndMissizedValues) {
  const Grid g = make_grid(4);
  std::vector<double> v(g.node_count(), 0.0);
  v[3] = std::nan("");
  EXPECT_THROW(DiscreteField(g, v), ParameterError);
  EXPECT_THROW(DiscreteField(g, std::vector<double>(10, 0.0)), SizeError);
}

TEST(DiscreteGradient, ExactOnAffineFields) {
  const Grid g = make_grid(16);
  const auto f = DiscreteField::from_function(g, [](Point x) { return 0.3 - 1.7 * x.x1 + 2.5 * x.x2; });
  const auto grads = discrete_gradient(f);
  for (const auto& z : grads.values()) {
    EXPECT_NEAR(z.z1, -1.7, 1e-13);
    EXPECT_NEAR(z.z2, 2.5, 1e-13);
  }
  const auto x1 = DiscreteField::from_function(g, [](Point x) { return x.x1; });
  const auto unit = discrete_gradient(x1);
  for (const auto& z : unit.values()) {
    EXPECT_NEAR(z.z1, 1.0, 1e-14);
    EXPECT_EQ(z.z2, 0.0);
  }
}

TEST(DiscreteGradient, ConstantFieldHasZeroGradient) {
  const auto f = DiscreteField::from_function(make_grid(8), [](Point) { return 4.2; });
  const auto grads = discrete_gradient(f);
  for (const auto& z : grads.values()) {
    EXPECT_EQ(z.z1, 0.0);
    EXPECT_EQ(z.z2, 0.0);
  }
}

TEST(DiscreteGradient, BilinearProductAtCellCenters) {
  const Grid g = make_grid(4);
  const auto f = DiscreteField::from_function(g, [](Point x) { return x.x1 * x.x2; });
  const auto grads = discrete_gradient(f);
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) {
      const Point c = g.cell_center(i, j);
      EXPECT_NEAR(grads(i, j).z1, c.x2, 1e-15);
      EXPECT_NEAR(grads(i, j).z2, c.x1, 1e-15);
    }
  }
}

TEST(Integrate, UnitDensity) {
  const auto f = DiscreteField::from_function(make_grid(10), [](Point x) { return x.x1; });
  EXPECT_NEAR(integrate({PPower{2.0}}, kOne, kOne, f), 1.0, 1e-14);
}

TEST(Integrate, ConstantFieldHasZeroEnergy) {
  const auto f = DiscreteField::from_function(make_grid(8), [](Point) { return -3.0; });
  EXPECT_EQ(integrate({PPower{2.0}}, kOne, kOne, f), 0.0);
  EXPECT_EQ(integrate({DoublePhase{2.0, 3.5}}, CoefficientField::distance_power(0.5, 0.5), kOne, f), 0.0);
}

TEST(Integrate, QuadraticAgainstFineQuadrature) {
  const double reference = oracle::midpoint_quadrature([](double x1, double) { return 4.0 * x1 * x1; }, 1000);
  EXPECT_NEAR(reference, 4.0 / 3.0, 1e-6);
  for (int m : {16, 32, 64}) {
    const auto f = DiscreteField::from_function(make_grid(m), [](Point x) { return x.x1 * x.x1; });
    const double h = 1.0 / m;
    EXPECT_NEAR(integrate({PPower{2.0}}, kOne, kOne, f), reference, h * h) << "m = " << m;
  }
}

TEST(Integrate, SecondOrderSelfConvergence) {
  const auto a = CoefficientField::smoothed_step(1.0, -1.0, 4.0);  // smooth (affine) on the square
  const IntegrandSpec spec{DoublePhase{2.0, 3.0}};
  auto u = [](Point x) { return std::sin(2.0 * x.x1) * std::cos(x.x2) + 0.5 * x.x2 * x.x2; };
  std::vector<double> lh, ld;
  for (int m : {16, 32, 64, 128}) {
    const double e1 = integrate(spec, a, kOne, DiscreteField::from_function(make_grid(m), u));
    const double e2 = integrate(spec, a, kOne, DiscreteField::from_function(make_grid(2 * m), u));
    lh.push_back(std::log(1.0 / m));
    ld.push_back(std::log(std::abs(e1 - e2)));
  }
  EXPECT_NEAR(fit_line(lh, ld).slope, 2.0, 0.3);
}

TEST(Integrate, CellGradientOverloadAgrees) {
  const auto f = DiscreteField::from_function(make_grid(12), [](Point x) { return std::exp(x.x1 - x.x2); });
  const IntegrandSpec spec{PPower{3.0}};
  EXPECT_EQ(integrate(spec, kOne, kOne, f), integrate(spec, kOne, kOne, discrete_gradient(f)));
}

TEST(FieldCsv, RoundTripIsExact) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd(0.0, 10.0);
  const Grid g = make_grid(7);
  DiscreteField f(g);
  for (double& v : f.values()) v = nd(rng);
  std::stringstream s;
  write_field_csv(s, f);
  const DiscreteField back = read_field_csv(s);
  EXPECT_EQ(back.grid(), g);
  for (std::size_t k = 0; k < g.node_count(); ++k) EXPECT_EQ(back.values()[k], f.values()[k]);
}

TEST(FieldCsv, MalformedInputs) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_field_csv(in);
  };
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("a,b,c,d\n"), ParseError);
  EXPECT_THROW(parse("node,x1,x2,value\n0,0,0,1\n"), ParseError);

  std::stringstream good;
  write_field_csv(good, DiscreteField(make_grid(4)));
  std::string text = good.str();
  const auto pos = text.find("\n3,");
  std::string swapped = text;
  swapped.replace(pos + 1, 1, "4");
  EXPECT_THROW(parse(swapped), ParseError);
  std::string wrong_x = text;
  wrong_x.replace(text.find("\n1,0.25,"), 8, "\n1,0.3, ");
  EXPECT_THROW(parse(wrong_x), ParseError);
}
