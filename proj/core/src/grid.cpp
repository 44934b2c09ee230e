#include "poincare/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poincare::grid {

ChebyshevGrid::ChebyshevGrid(double t0, double t_max, int points_per_panel, double first_panel,
                             double max_panel)
    : p_(points_per_panel) {
  if (!(t_max > t0)) throw std::invalid_argument("ChebyshevGrid: t_max must exceed t0");
  if (p_ < 3) throw std::invalid_argument("ChebyshevGrid: need at least 3 points per panel");
  if (!(first_panel > 0.0) || !(max_panel >= first_panel)) {
    throw std::invalid_argument("ChebyshevGrid: bad panel lengths");
  }

  breaks_.push_back(t0);
  double h = first_panel;
  while (breaks_.back() < t_max) {
    double next = breaks_.back() + h;
    // absorb a sliver rather than leave a tiny last panel
    if (next + 0.25 * h >= t_max) next = t_max;
    breaks_.push_back(next);
    h = std::min(2.0 * h, max_panel);
  }

  const int m = p_ - 1;
  for (int k = 0; k <= m; ++k) {
    ref_.push_back(-std::cos(M_PI * k / m));
    double w = (k % 2 == 0) ? 1.0 : -1.0;
    if (k == 0 || k == m) w *= 0.5;
    bary_.push_back(w);
  }
  ref_.front() = -1.0;
  ref_.back() = 1.0;

  for (int panel = 0; panel < panels(); ++panel) {
    const double a = breaks_[static_cast<std::size_t>(panel)];
    const double b = breaks_[static_cast<std::size_t>(panel) + 1];
    for (int k = panel == 0 ? 0 : 1; k <= m; ++k) {
      nodes_.push_back(k == m ? b : 0.5 * (a + b) + 0.5 * (b - a) * ref_[static_cast<std::size_t>(k)]);
    }
  }
}

int ChebyshevGrid::panel_of(double t) const {
  if (t < t0() || t > t_max()) throw std::out_of_range("ChebyshevGrid: point outside the grid");
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  int k = static_cast<int>(it - breaks_.begin()) - 1;
  return std::min(k, panels() - 1);
}

void ChebyshevGrid::interpolation_row(double t, std::size_t& first, std::vector<double>& row) const {
  const int panel = panel_of(t);
  first = first_node(panel);
  const double a = breaks_[static_cast<std::size_t>(panel)];
  const double b = breaks_[static_cast<std::size_t>(panel) + 1];
  const double x = (2.0 * t - a - b) / (b - a);
  row.assign(static_cast<std::size_t>(p_), 0.0);
  double denom = 0.0;
  for (std::size_t k = 0; k < row.size(); ++k) {
    const double d = x - ref_[k];
    if (d == 0.0) {
      std::fill(row.begin(), row.end(), 0.0);
      row[k] = 1.0;
      return;
    }
    row[k] = bary_[k] / d;
    denom += row[k];
  }
  for (double& w : row) w /= denom;
}

double ChebyshevGrid::interpolate(std::span<const double> values, double t) const {
  if (values.size() != nodes_.size()) throw std::invalid_argument("interpolate: value count mismatch");
  std::size_t first = 0;
  std::vector<double> row;
  interpolation_row(t, first, row);
  double sum = 0.0;
  for (std::size_t k = 0; k < row.size(); ++k) sum += row[k] * values[first + k];
  return sum;
}

IterateGrid::IterateGrid(std::shared_ptr<const ChebyshevGrid> g, int derivatives)
    : grid(std::move(g)),
      values(static_cast<std::size_t>(derivatives), std::vector<double>(grid->size(), 0.0)) {}

double IterateGrid::compute_norm0() const {
  double best = 0.0;
  const std::size_t n = grid ? grid->size() : 0;
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (const auto& v : values) s += std::abs(v[k]);
    best = std::max(best, s);
  }
  return best;
}

double IterateGrid::value(int j, double t) const {
  if (t > grid->t_max()) return 0.0;
  return grid->interpolate(values.at(static_cast<std::size_t>(j)), t);
}

double distance0(const IterateGrid& a, const IterateGrid& b) {
  if (a.grid != b.grid || a.values.size() != b.values.size()) {
    throw std::invalid_argument("distance0: iterates live on different grids");
  }
  double best = 0.0;
  for (std::size_t k = 0; k < a.grid->size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j) s += std::abs(a.values[j][k] - b.values[j][k]);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace poincare::grid
