#include "bayesev/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bayesev {

GridSpec GridSpec::uniform(std::vector<Interval> box, std::size_t points, QuadratureRule rule) {
  GridSpec grid;
  grid.points_per_dim.assign(box.size(), points);
  grid.bounds = std::move(box);
  grid.rule = rule;
  return grid;
}

std::size_t GridSpec::total_points() const {
  std::size_t total = 1;
  for (const std::size_t n : points_per_dim) {
    if (n != 0 && total > budget / n + 1) {
      return budget + 1;
    }
    total *= n;
  }
  return total;
}

void GridSpec::validate() const {
  if (bounds.empty() || bounds.size() > kMaxGridDims) {
    throw UsageError("grid must have between 1 and 3 dimensions");
  }
  if (points_per_dim.size() != bounds.size()) {
    throw UsageError("grid needs one point count per dimension");
  }
  for (std::size_t d = 0; d < bounds.size(); ++d) {
    if (points_per_dim[d] < 2) {
      throw UsageError("grid needs at least 2 points per dimension");
    }
    if (!bounds[d].is_finite() || !(bounds[d].lower < bounds[d].upper)) {
      throw UsageError("grid bounds must be finite with lower < upper (dimension " +
                       std::to_string(d) + ")");
    }
  }
  if (total_points() > budget) {
    throw UsageError("grid exceeds its point budget of " + std::to_string(budget));
  }
}

AxisNodes axis_nodes(const Interval& bounds, std::size_t points, QuadratureRule rule) {
  AxisNodes nodes;
  nodes.x.resize(points);
  nodes.log_w.resize(points);
  const double width = bounds.width();
  if (rule == QuadratureRule::midpoint) {
    const double h = width / static_cast<double>(points);
    const double log_h = std::log(h);
    for (std::size_t j = 0; j < points; ++j) {
      nodes.x[j] = bounds.lower + (static_cast<double>(j) + 0.5) * h;
      nodes.log_w[j] = log_h;
    }
  } else {
    const double h = width / static_cast<double>(points - 1);
    const double log_h = std::log(h);
    for (std::size_t j = 0; j < points; ++j) {
      nodes.x[j] = (j + 1 == points) ? bounds.upper : bounds.lower + static_cast<double>(j) * h;
      nodes.log_w[j] = log_h;
    }
    nodes.log_w.front() = log_h - std::log(2.0);
    nodes.log_w.back() = log_h - std::log(2.0);
  }
  return nodes;
}


double log_integrate(const LogDensity& f, const GridSpec& grid) {
  LogSumAccumulator acc;
  for_each_grid_node(grid, [&](std::span<const double> theta, double log_w) {
    const double v = check_not_nan(f(theta), "integrand");
    acc.add(v == kNegInf ? kNegInf : v + log_w);
  });
  return acc.value();
}

EvidenceResult evidence_grid(const BayesModel& model, const GridSpec& grid) {
  if (grid.dims() != model.space.dims()) {
    throw UsageError("grid dimension does not match the model parameter space");
  }
  LogSumAccumulator acc;
  double ll_min = kInf;
  double ll_max = kNegInf;
  for_each_grid_node(grid, [&](std::span<const double> theta, double log_w) {
    const double lp = model.log_prior_at(theta);
    if (lp == kNegInf) {
      acc.add(kNegInf);
      return;
    }
    const double ll = model.log_like(theta);
    ll_min = std::min(ll_min, ll);
    ll_max = std::max(ll_max, ll);
    acc.add(ll == kNegInf ? kNegInf : ll + lp + log_w);
  });
  EvidenceResult result;
  result.log_z = acc.value();
  result.method = EvidenceMethod::grid;
  const auto [lo, hi] =
      std::minmax_element(grid.points_per_dim.begin(), grid.points_per_dim.end());
  if (*lo == *hi) {
    result.grid_points_per_dim = *lo;
  }
  result.truncation_note = model.space.truncation_note;
  if (ll_max > kNegInf) {
    result.log_like_min = ll_min;
    result.log_like_max = ll_max;
  }
  return result;
}

RefinementResult refine_until(const LogDensity& f, const std::vector<Interval>& box,
                              double rel_tol, std::size_t max_points,
                              std::size_t initial_points, QuadratureRule rule) {
  if (!(rel_tol > 0.0)) {
    throw UsageError("refine_until needs rel_tol > 0");
  }
  RefinementResult result;
  result.grid = GridSpec::uniform(box, std::max<std::size_t>(initial_points, 2), rule);
  result.grid.budget = std::max(max_points, result.grid.total_points());
  result.log_value = log_integrate(f, result.grid);
  while (true) {
    GridSpec next = result.grid;
    for (auto& n : next.points_per_dim) {
      n *= 2;
    }
    if (next.total_points() > max_points) {
      return result;
    }
    const double value = log_integrate(f, next);
    // -inf twice in a row is a converged zero integral.
    result.last_change = (value == result.log_value) ? 0.0 : std::abs(value - result.log_value);
    result.log_value = value;
    result.grid = next;
    ++result.refinements;
    const double scale = std::isfinite(value) ? std::max(1.0, std::abs(value)) : 1.0;
    if (result.last_change < rel_tol * scale) {
      result.converged = true;
      return result;
    }
  }
}

}  // namespace bayesev
