// Copyright 2026 The corpdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Classifies a corpus metric as distributional or not by comparing the
// shape of its KSC trajectory with those of the ENERGY (distributional) and
// AHD (non-distributional) prototypes.
//
// Pipeline per metric: pool all KSC distances and standardize them with a
// single mean and standard deviation; per separation l, estimate the density
// of the standardized values on a fixed grid; compare two metrics by the
// discretized integrated squared difference of their densities, weighted by
// the share of pairs at each l.

#ifndef CORPDIST_DISTRIBUTIONALITY_HPP_
#define CORPDIST_DISTRIBUTIONALITY_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "corpdist/ksc.hpp"
#include "corpdist/metrics.hpp"

namespace corpdist {

struct StandardizedValue {
  std::size_t ell;
  std::size_t rep;
  double value;
};

struct StandardizedTable {
  MetricId metric;
  std::vector<StandardizedValue> values;
  double mu = 0.0;
  double sigma = 1.0;

  /// Standardized values grouped by separation, in record order.
  std::map<std::size_t, std::vector<double>> by_ell() const;
};

/// (x - mu) / sigma with the pooled mean and population standard deviation
/// of all records. Records must share one metric; needs >= 2 records and
/// nonzero spread.
StandardizedTable standardize(std::span<const DistanceRecord> records);

struct GridSpec {
  double a = -8.0;
  double b = 8.0;
  std::size_t c = 3000;

  double delta_x() const { return (b - a) / static_cast<double>(c); }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct KdeGrid {
  GridSpec grid;
  double bandwidth = 0.0;
  std::vector<double> densities;  // c + 1 values at a + i * delta_x

  double delta_x() const { return grid.delta_x(); }
};

/// Lower bound applied to every bandwidth.
inline constexpr double kMinBandwidth = 1e-3;

/// Silverman's rule 0.9 * min(s, IQR / 1.34) * n^(-1/5), floored at
/// kMinBandwidth. s is the n-1 standard deviation and the IQR uses linearly
/// interpolated quantiles. When min(s, IQR / 1.34) is zero the spread falls
/// back to s, then to 1 (the unit scale of standardized data).
double silverman_bandwidth(std::span<const double> sample);

/// Gaussian kernel density estimate evaluated on the c + 1 grid points.
KdeGrid kde(std::span<const double> sample, const GridSpec& grid = {});

/// sum_{i=0}^{c} (f_i - g_i)^2 * delta_x. Grids must match.
double fan_deviation(const KdeGrid& f, const KdeGrid& g);

/// Per-separation densities of one standardized table plus the weights
/// w_l = (values at l) / (all values).
struct Trajectory {
  MetricId metric;
  std::map<std::size_t, KdeGrid> densities;
  std::map<std::size_t, double> weights;
  std::map<std::size_t, std::size_t> counts;
};

Trajectory trajectory(const StandardizedTable& table, const GridSpec& grid = {});

/// sum_l w_l * fan_deviation(f_v^l, f_w^l) with v's weights. Both
/// trajectories must come from the same KSC design.
double weighted_deviation(const Trajectory& v, const Trajectory& w);
double weighted_deviation(const StandardizedTable& v,
                          const StandardizedTable& w,
                          const GridSpec& grid = {});

enum class Label { kDistributional, kNonDistributional };

std::string_view to_string(Label label);

struct DeviationReport {
  MetricId metric;
  double i_energy;
  double i_ahd;
  Label label;  // distributional iff i_energy <= i_ahd
};

DeviationReport classify(const Trajectory& candidate, const Trajectory& energy,
                         const Trajectory& ahd);
DeviationReport classify(const StandardizedTable& candidate,
                         const StandardizedTable& energy,
                         const StandardizedTable& ahd,
                         const GridSpec& grid = {});

struct Classification {
  std::vector<DeviationReport> reports;
  /// Candidates whose distances are constant on this sample; they cannot be
  /// standardized and get no report.
  std::vector<MetricId> degenerate;
};

/// Splits a pooled record list by metric, standardizes each, and classifies
/// every metric other than the two prototypes, in order of first appearance.
/// Throws if ENERGY or AHD rows are missing or degenerate.
Classification classify_records(std::span<const DistanceRecord> records,
                                const GridSpec& grid = {});

}  // namespace corpdist

#endif  // CORPDIST_DISTRIBUTIONALITY_HPP_
