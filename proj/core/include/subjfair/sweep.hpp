#pragma once

// Parameter sweeps over delta / epsilon / theta grids. Output is a flat
// table: one row per parameter combination per metric.

#include <string>
#include <vector>

#include "subjfair/run_file.hpp"

namespace subjfair {

struct SweepGrid {
  std::vector<double> deltas{0.0, 0.3, 0.5, 0.8, 1.0};
  std::vector<double> epsilons{0.0};
  std::vector<double> thetas{0.4, 0.5, 0.6};
};

struct SweepRow {
  double delta;
  double epsilon;
  double theta;
  std::string metric;
  double value;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Metric names emitted for every cell, in row order.
const std::vector<std::string>& sweep_metrics();

/// Re-audits `base` at every grid point (delta-major order). Each cell is
/// independent of the others.
std::vector<SweepRow> sweep(const AuditRunFile& base, const SweepGrid& grid);

/// CSV with header `delta,epsilon,theta,metric,value`.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace subjfair
