#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "bayesev/core.hpp"

namespace bayesev {

enum class QuadratureRule { midpoint, trapezoid };

inline constexpr std::size_t kDefaultPointBudget = 10'000'000;
inline constexpr std::size_t kMaxGridDims = 3;

/// Tensor-product grid over a finite box of at most three dimensions.
struct GridSpec {
  std::vector<std::size_t> points_per_dim;
  std::vector<Interval> bounds;
  QuadratureRule rule = QuadratureRule::midpoint;
  std::size_t budget = kDefaultPointBudget;

  /// Same number of points in every dimension of `box`.
  static GridSpec uniform(std::vector<Interval> box, std::size_t points,
                          QuadratureRule rule = QuadratureRule::midpoint);

  [[nodiscard]] std::size_t dims() const { return bounds.size(); }
  [[nodiscard]] std::size_t total_points() const;
  void validate() const;
};

/// Node coordinates and log quadrature weights along one axis.
struct AxisNodes {
  std::vector<double> x;
  std::vector<double> log_w;
};

AxisNodes axis_nodes(const Interval& bounds, std::size_t points, QuadratureRule rule);

/// Calls visit(theta, log_weight) for every node in row-major order (last dimension fastest).
template <typename Visit>
void for_each_grid_node(const GridSpec& grid, Visit&& visit) {
  grid.validate();
  const std::size_t dims = grid.dims();
  std::vector<AxisNodes> axes;
  axes.reserve(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    axes.push_back(axis_nodes(grid.bounds[d], grid.points_per_dim[d], grid.rule));
  }
  std::array<std::size_t, kMaxGridDims> idx{};
  std::array<double, kMaxGridDims> theta{};
  const std::size_t total = grid.total_points();
  for (std::size_t n = 0; n < total; ++n) {
    double log_w = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
      theta[d] = axes[d].x[idx[d]];
      log_w += axes[d].log_w[idx[d]];
    }
    visit(std::span<const double>(theta.data(), dims), log_w);
    for (std::size_t d = dims; d-- > 0;) {
      if (++idx[d] < grid.points_per_dim[d]) {
        break;
      }
      idx[d] = 0;
    }
  }
}

/// log of the integral of exp(f) over the grid box.
///
/// Nodes are visited in row-major order (last dimension fastest) and reduced by
/// one streaming log-sum-exp, so the result is bit-reproducible for a fixed grid.
double log_integrate(const LogDensity& f, const GridSpec& grid);

/// Grid evidence of a model: log of the integral of l(y|theta) g(theta) over the grid box.
EvidenceResult evidence_grid(const BayesModel& model, const GridSpec& grid);

struct RefinementResult {
  double log_value = kNegInf;
  GridSpec grid;
  bool converged = false;
  std::size_t refinements = 0;
  double last_change = kInf;
};

/// Doubles points per dimension until two successive log-integrals differ by less
/// than rel_tol * max(1, |value|), or the next grid would exceed max_points.
/// Non-convergence is reported through `converged`, never hidden.
RefinementResult refine_until(const LogDensity& f, const std::vector<Interval>& box,
                              double rel_tol, std::size_t max_points,
                              std::size_t initial_points = 16,
                              QuadratureRule rule = QuadratureRule::midpoint);

}  // namespace bayesev
