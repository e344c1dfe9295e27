#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "ghostlab/integrands.hpp"

namespace ghostlab {

/// Uniform m x m cell grid on [0,1]^2 with (m+1)^2 nodes.
///
/// Node (i, j) sits at (i h, j h) and has flat index j (m+1) + i.
/// Cell (i, j) spans [i h, (i+1) h] x [j h, (j+1) h] and has flat index j m + i.
class Grid {
 public:
  static constexpr int kMinResolution = 4;

  int m() const { return m_; }
  double h() const { return 1.0 / m_; }
  std::size_t node_count() const { return static_cast<std::size_t>(m_ + 1) * (m_ + 1); }
  std::size_t cell_count() const { return static_cast<std::size_t>(m_) * m_; }

  std::size_t node_index(int i, int j) const { return static_cast<std::size_t>(j) * (m_ + 1) + i; }
  std::size_t cell_index(int i, int j) const { return static_cast<std::size_t>(j) * m_ + i; }

  Point node_point(int i, int j) const { return {static_cast<double>(i) / m_, static_cast<double>(j) / m_}; }
  Point cell_center(int i, int j) const { return {(i + 0.5) / m_, (j + 0.5) / m_}; }
  bool is_boundary_node(int i, int j) const { return i == 0 || j == 0 || i == m_ || j == m_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  friend Grid make_grid(int m);
  explicit Grid(int m) : m_(m) {}
  int m_;
};

/// Throws SizeError when m < 4.
Grid make_grid(int m);

/// Nodal values on a grid with the Dirichlet boundary flagged.
class DiscreteField {
 public:
  explicit DiscreteField(Grid grid);
  DiscreteField(Grid grid, std::vector<double> values);

  static DiscreteField from_function(Grid grid, const std::function<double(Point)>& f);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator()(int i, int j) const { return values_[grid_.node_index(i, j)]; }
  double& operator()(int i, int j) { return values_[grid_.node_index(i, j)]; }
  bool is_boundary(std::size_t node) const { return boundary_mask_[node] != 0; }
  std::span<const unsigned char> boundary_mask() const { return boundary_mask_; }

 private:
  Grid grid_;
  std::vector<double> values_;
  std::vector<unsigned char> boundary_mask_;
};

/// One gradient per cell.
class CellGradientField {
 public:
  CellGradientField(Grid grid, std::vector<GradientVector> grads);

  const Grid& grid() const { return grid_; }
  const GradientVector& operator()(int i, int j) const { return grads_[grid_.cell_index(i, j)]; }
  std::span<const GradientVector> values() const { return grads_; }

 private:
  Grid grid_;
  std::vector<GradientVector> grads_;
};

/// Gradient of the bilinear interpolant at each cell center.
CellGradientField discrete_gradient(const DiscreteField& field);

/// Cell-center quadrature sum_cells h^2 density(center, cell gradient).
double integrate(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                 const DiscreteField& field);
double integrate(const IntegrandSpec& spec, const CoefficientField& coeff_a, const CoefficientField& coeff_b,
                 const CellGradientField& gradients);

/// CSV with header "node,x1,x2,value", one row per node in index order.
void write_field_csv(std::ostream& out, const DiscreteField& field);
/// Inverse of write_field_csv; the resolution is inferred from the row count.
/// Throws ParseError on malformed input.
DiscreteField read_field_csv(std::istream& in);

}  // namespace ghostlab
