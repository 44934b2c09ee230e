#pragma once

#include <memory>
#include <span>
#include <vector>

namespace poincare::grid {

/// Composite Chebyshev-Lobatto grid on [t0, t_max]. Panel lengths start at
/// `first_panel`, double up to `max_panel`, then stay constant; the last
/// panel ends exactly at t_max. Neighbouring panels share their endpoint,
/// so there are panels * (p - 1) + 1 nodes. Interpolation is barycentric
/// on the panel that contains t.
class ChebyshevGrid {
 public:
  ChebyshevGrid(double t0, double t_max, int points_per_panel, double first_panel = 0.5,
                double max_panel = 8.0);

  double t0() const { return breaks_.front(); }
  double t_max() const { return breaks_.back(); }
  int points_per_panel() const { return p_; }
  int panels() const { return static_cast<int>(breaks_.size()) - 1; }
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  /// Panel containing t (the right one at a shared endpoint, except at t_max).
  int panel_of(double t) const;
  /// Index of the first node of panel k.
  std::size_t first_node(int panel) const { return static_cast<std::size_t>(panel) * (p_ - 1); }

  /// Barycentric weights for t: value = sum_k row[k] * values[first + k].
  void interpolation_row(double t, std::size_t& first, std::vector<double>& row) const;
  /// Throws std::out_of_range outside [t0, t_max].
  double interpolate(std::span<const double> values, double t) const;

 private:
  int p_;
  std::vector<double> breaks_;
  std::vector<double> nodes_;
  std::vector<double> bary_;  // barycentric weights of the reference panel
  std::vector<double> ref_;   // reference nodes on [-1, 1], ascending
};

/// A sampled iterate: values[j][k] = omega^(j)(nodes[k]) for j = 0..n-2.
/// Beyond t_max the iterate is modelled as identically zero.
struct IterateGrid {
  std::shared_ptr<const ChebyshevGrid> grid;
  std::vector<std::vector<double>> values;
  double norm0 = 0.0;
  double tail_rate = 0.0;  // slowest kernel decay rate, for tail bounds

  IterateGrid() = default;
  IterateGrid(std::shared_ptr<const ChebyshevGrid> g, int derivatives);

  int derivatives() const { return static_cast<int>(values.size()); }
  /// max over nodes of sum_j |values[j][k]|.
  double compute_norm0() const;
  void refresh_norm() { norm0 = compute_norm0(); }
  /// omega^(j)(t) by interpolation; 0 beyond t_max.
  double value(int j, double t) const;
};

/// max over nodes of sum_j |a_j - b_j|; the grids must coincide.
double distance0(const IterateGrid& a, const IterateGrid& b);

}  // namespace poincare::grid
