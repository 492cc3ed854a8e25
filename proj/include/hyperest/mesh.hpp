#pragma once

#include <memory>
#include <vector>

namespace hyperest {

/// Periodic partition x_0 < ... < x_M of a 1D torus; x_M is identified with x_0.
class Mesh1D {
 public:
  /// Throws InvalidMeshError unless nodes are strictly increasing with at least
  /// two cells, or if h / h_min exceeds `max_quasi_uniformity`.
  explicit Mesh1D(std::vector<double> nodes, double max_quasi_uniformity = 10.0);

  static Mesh1D uniform(double left, double right, int cells);

  int cells() const { return static_cast<int>(widths_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& widths() const { return widths_; }
  double width(int cell) const { return widths_[cell]; }
  double left(int cell) const { return nodes_[cell]; }
  double right(int cell) const { return nodes_[cell + 1]; }
  double domain_left() const { return nodes_.front(); }
  double domain_right() const { return nodes_.back(); }
  double length() const { return nodes_.back() - nodes_.front(); }
  double h() const { return h_max_; }
  double h_min() const { return h_min_; }
  double quasi_uniformity() const { return h_max_ / h_min_; }

  /// Interface i sits at x_i between cells i-1 and i (periodic wrap for i=0).
  double interface_x(int i) const { return nodes_[wrap_interface(i)]; }
  int wrap_interface(int i) const;
  int left_cell(int interface) const;
  int right_cell(int interface) const;
  /// (h_{i-1/2} + h_{i+1/2}) / 2 at interface i.
  double interface_width(int interface) const;

  /// Maps x into [x_0, x_M) periodically.
  double wrap(double x) const;
  /// Cell containing wrap(x); interface points belong to the cell on their right.
  int locate(double x) const;
  double to_reference(int cell, double x) const;
  double to_physical(int cell, double xi) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> widths_;
  double h_max_ = 0.0;
  double h_min_ = 0.0;
};

using MeshPtr = std::shared_ptr<const Mesh1D>;

}  // namespace hyperest
