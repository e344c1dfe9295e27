#include "ghostlab/grid.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ghostlab/errors.hpp"
#include "ghostlab/numerics.hpp"

namespace ghostlab {

Grid make_grid(int m) {
  if (m < Grid::kMinResolution) {
    throw SizeError("grid resolution must be >= " + std::to_string(Grid::kMinResolution) + ", got " +
                    std::to_string(m));
  }
  return Grid(m);
}

DiscreteField::DiscreteField(Grid grid) : DiscreteField(grid, std::vector<double>(grid.node_count(), 0.0)) {}

DiscreteField::DiscreteField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)), boundary_mask_(grid.node_count(), 0) {
  if (values_.size() != grid_.node_count()) throw SizeError("field size does not match the grid node count");
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParameterError("field values must be finite");
  }
  const int m = grid_.m();
  for (int j = 0; j <= m; ++j) {
    for (int i = 0; i <= m; ++i) boundary_mask_[grid_.node_index(i, j)] = grid_.is_boundary_node(i, j) ? 1 : 0;
  }
}

DiscreteField DiscreteField::from_function(Grid grid, const std::function<double(Point)>& f) {
  std::vector<double> values(grid.node_count());
  for (int j = 0; j <= grid.m(); ++j) {
    for (int i = 0; i <= grid.m(); ++i) values[grid.node_index(i, j)] = f(grid.node_point(i, j));
  }
  return DiscreteField(grid, std::move(values));
}

CellGradientField::CellGradientField(Grid grid, std::vector<GradientVector> grads)
    : grid_(grid), grads_(std::move(grads)) {
  if (grads_.size() != grid_.cell_count()) throw SizeError("gradient field size does not match the cell count");
}

CellGradientField discrete_gradient(const DiscreteField& field) {
  const Grid& g = field.grid();
  const int m = g.m();
  const double inv_2h = 0.5 * m;
  std::vector<GradientVector> grads(g.cell_count());
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const double u00 = field(i, j), u10 = field(i + 1, j);
      const double u01 = field(i, j + 1), u11 = field(i + 1, j + 1);
      grads[g.cell_index(i, j)] = {(u10 + u11 - u00 - u01) * inv_2h, (u01 + u11 - u00 - u10) * inv_2h};
    }
  }
  return CellGradientField(g, std::move(grads));
}

double integrate(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                 const CellGradientField& gradients) {
  const Grid& g = gradients.grid();
  const double area = g.h() * g.h();
  CompensatedSum sum;
  for (int j = 0; j < g.m(); ++j) {
    for (int i = 0; i < g.m(); ++i) {
      sum.add(area * eval_density(spec, coeff_a, coeff_b, g.cell_center(i, j), gradients(i, j)));
    }
  }
  return sum.value();
}

double integrate(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                 const DiscreteField& field) {
  return integrate(spec, coeff_a, coeff_b, discrete_gradient(field));
}

void write_field_csv(std::ostream& out, const DiscreteField& field) {
  const Grid& g = field.grid();
  out << "node,x1,x2,value\n";
  for (int j = 0; j <= g.m(); ++j) {
    for (int i = 0; i <= g.m(); ++i) {
      const Point x = g.node_point(i, j);
      out << g.node_index(i, j) << ',' << format_number(x.x1) << ',' << format_number(x.x2) << ','
          << format_number(field(i, j)) << '\n';
    }
  }
}

DiscreteField read_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("field CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "node,x1,x2,value") throw ParseError("field CSV header must be 'node,x1,x2,value'");

  std::vector<double> values;
  std::vector<std::pair<double, double>> coords;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string tok[4];
    for (int k = 0; k < 4; ++k) {
      if (!std::getline(cells, tok[k], ',')) throw ParseError("field CSV row " + std::to_string(row) + " has < 4 columns");
    }
    std::string extra;
    if (std::getline(cells, extra, ',')) throw ParseError("field CSV row " + std::to_string(row) + " has > 4 columns");
    const auto idx = parse_number(tok[0]);
    const auto x1 = parse_number(tok[1]);
    const auto x2 = parse_number(tok[2]);
    const auto v = parse_number(tok[3]);
    if (!idx || !x1 || !x2 || !v) throw ParseError("field CSV row " + std::to_string(row) + " is not numeric");
    if (*idx != static_cast<double>(values.size())) {
      throw ParseError("field CSV row " + std::to_string(row) + " is out of node order");
    }
    values.push_back(*v);
    coords.emplace_back(*x1, *x2);
  }

  const auto side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(values.size()))));
  if (side < 2 || static_cast<std::size_t>(side) * side != values.size()) {
    throw ParseError("field CSV node count is not (m+1)^2");
  }
  const int m = side - 1;
  Grid grid = [&] {
    try {
      return make_grid(m);
    } catch (const SizeError& e) {
      throw ParseError(std::string("field CSV: ") + e.what());
    }
  }();
  for (int j = 0; j <= m; ++j) {
    for (int i = 0; i <= m; ++i) {
      const Point x = grid.node_point(i, j);
      const auto& [c1, c2] = coords[grid.node_index(i, j)];
      if (std::abs(c1 - x.x1) > 1e-9 || std::abs(c2 - x.x2) > 1e-9) {
        throw ParseError("field CSV coordinates do not match a uniform grid");
      }
    }
  }
  try {
    return DiscreteField(grid, std::move(values));
  } catch (const ParameterError& e) {
    throw ParseError(std::string("field CSV: ") + e.what());
  }
}

}  // namespace ghostlab
