#include "hyperest/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperest/errors.hpp"
#include "hyperest/quadrature.hpp"

namespace hyperest {

Mesh1D::Mesh1D(std::vector<double> nodes, double max_quasi_uniformity) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 3) {
    throw InvalidMeshError("mesh needs at least two cells");
  }
  widths_.resize(nodes_.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    widths_[i] = nodes_[i + 1] - nodes_[i];
    if (!(widths_[i] > 0.0)) {
      throw InvalidMeshError("mesh nodes not strictly increasing at index " + std::to_string(i));
    }
  }
  h_max_ = *std::max_element(widths_.begin(), widths_.end());
  h_min_ = *std::min_element(widths_.begin(), widths_.end());
  if (h_max_ / h_min_ > max_quasi_uniformity) {
    throw InvalidMeshError("mesh ratio h/h_min = " + std::to_string(h_max_ / h_min_) +
                           " exceeds quasi-uniformity bound");
  }
}

Mesh1D Mesh1D::uniform(double left, double right, int cells) {
  if (cells < 2) throw InvalidMeshError("mesh needs at least two cells");
  if (!(right > left)) throw InvalidMeshError("empty domain");
  std::vector<double> nodes(cells + 1);
  for (int i = 0; i <= cells; ++i) {
    nodes[i] = left + (right - left) * static_cast<double>(i) / cells;
  }
  nodes.back() = right;
  return Mesh1D(std::move(nodes));
}

int Mesh1D::wrap_interface(int i) const {
  const int m = cells();
  return ((i % m) + m) % m;
}

int Mesh1D::left_cell(int interface) const { return wrap_interface(interface - 1); }

int Mesh1D::right_cell(int interface) const { return wrap_interface(interface); }

double Mesh1D::interface_width(int interface) const {
  return 0.5 * (widths_[left_cell(interface)] + widths_[right_cell(interface)]);
}

double Mesh1D::wrap(double x) const {
  const double len = length();
  double y = std::fmod(x - domain_left(), len);
  if (y < 0.0) y += len;
  if (y >= len) y -= len;
  return domain_left() + y;
}

int Mesh1D::locate(double x) const {
  const double y = wrap(x);
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), y);
  int cell = static_cast<int>(it - nodes_.begin()) - 1;
  return std::clamp(cell, 0, cells() - 1);
}

double Mesh1D::to_reference(int cell, double x) const {
  return 2.0 * (x - nodes_[cell]) / widths_[cell] - 1.0;
}

double Mesh1D::to_physical(int cell, double xi) const {
  return nodes_[cell] + 0.5 * (xi + 1.0) * widths_[cell];
}

const QuadratureRule<double>& cached_gauss_rule(int n) {
  static const std::vector<QuadratureRule<double>> rules = [] {
    std::vector<QuadratureRule<double>> all;
    all.reserve(kMaxGaussPoints);
    for (int k = 1; k <= kMaxGaussPoints; ++k) all.push_back(gauss_rule<double>(k));
    return all;
  }();
  if (n < 1 || n > kMaxGaussPoints) {
    throw UnsupportedError("gauss_rule: unsupported point count " + std::to_string(n));
  }
  return rules[n - 1];
}

}  // namespace hyperest
