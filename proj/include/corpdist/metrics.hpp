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

// Corpus-level distances d(A, B) over embedded corpora.
//
// All metrics are built on a DocDistance between individual documents except
// FID, which works on the Gaussian fit (mean and covariance) of each corpus.
// Every function is pure; the PairDistances cache exists so that several
// metrics can be scored on one corpus pair without recomputing the O(n^2)
// distance tables.

#ifndef CORPDIST_METRICS_HPP_
#define CORPDIST_METRICS_HPP_

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "corpdist/vectorspace.hpp"

namespace corpdist {

enum class MetricKind { kEnergy, kAhd, kIrpr, kPr, kDc, kFid, kExternal };

/// Identifies a corpus metric. PR and DC carry their neighborhood size k;
/// external metrics (scored elsewhere, e.g. Mauve) carry a free-form label.
struct MetricId {
  MetricKind kind = MetricKind::kEnergy;
  std::optional<std::size_t> k;
  std::string label;

  static MetricId energy() { return {MetricKind::kEnergy, {}, {}}; }
  static MetricId ahd() { return {MetricKind::kAhd, {}, {}}; }
  static MetricId irpr() { return {MetricKind::kIrpr, {}, {}}; }
  static MetricId fid() { return {MetricKind::kFid, {}, {}}; }
  static MetricId pr(std::size_t k);
  static MetricId dc(std::size_t k);
  static MetricId external(std::string label,
                           std::optional<std::size_t> k = {});

  /// Name as written in the CSV `metric` column ("ENERGY", "PR", "mauve").
  std::string name() const;
  /// Human-readable name with k appended ("PR_5").
  std::string display_name() const;

  friend bool operator==(const MetricId&, const MetricId&) = default;
  friend std::strong_ordering operator<=>(const MetricId&,
                                          const MetricId&) = default;
};

/// Builds a MetricId from CSV-style (name, k). Built-in names are matched
/// case-insensitively; any other name becomes an external metric.
MetricId parse_metric(std::string_view name, std::optional<std::size_t> k);

/// Parses "ENERGY", "PR_5", "dc_2", ... (display-name syntax).
MetricId parse_metric_token(std::string_view token);

/// Components of PR_k and DC_k. Fields not computed by a given call are NaN.
struct PrDcComponents {
  double precision;
  double recall;
  double density;
  double coverage;
};

/// 2ab / (a + b), defined as 0 when either input is 0.
double harmonic_mean(double a, double b);

/// Precomputed document distances for an ordered corpus pair (X, Y).
class PairDistances {
 public:
  PairDistances(const Corpus& x, const Corpus& y, DocDistance kind);

  const Corpus& x() const { return *x_; }
  const Corpus& y() const { return *y_; }
  /// xy(i, j) = delta(x_i, y_j); yx is its transpose.
  const DistanceMatrix& xy() const { return xy_; }
  const DistanceMatrix& yx() const { return yx_; }
  const DistanceMatrix& xx() const { return xx_; }
  const DistanceMatrix& yy() const { return yy_; }

 private:
  const Corpus* x_;
  const Corpus* y_;
  DistanceMatrix xy_, yx_, xx_, yy_;
};

// Energy statistic (V-statistic form): twice the mean cross distance minus
// the two mean within-corpus distances, diagonals included.
double energy_distance(const Corpus& a, const Corpus& b, DocDistance kind);
double energy_distance(const PairDistances& d);

/// Mean over x in X of the nearest-neighbor distance from x into Y.
double directed_avg_nn(const Corpus& x, const Corpus& y, DocDistance kind);

/// Average Hausdorff distance: mean of the two directed averages.
double ahd(const Corpus& x, const Corpus& y, DocDistance kind);
double ahd(const PairDistances& d);

/// Harmonic mean of the two directed averages.
double irpr(const Corpus& x, const Corpus& y, DocDistance kind);
double irpr(const PairDistances& d);

/// precision: share of c_j lying in the k-neighborhood (within c_j) of some
/// element of c_i. recall: the same with the roles swapped.
PrDcComponents pr_components(const Corpus& ci, const Corpus& cj, std::size_t k,
                             DocDistance kind);
PrDcComponents pr_components(const PairDistances& d, std::size_t k);

/// density: mean number of c_i elements whose k-neighborhood within c_j
/// contains a given y in c_j, divided by k (reported unclamped).
/// coverage: share of x in c_i whose nearest other element of c_i is
/// strictly closer than its k-th nearest element of c_j.
PrDcComponents dc_components(const Corpus& ci, const Corpus& cj, std::size_t k,
                             DocDistance kind);
PrDcComponents dc_components(const PairDistances& d, std::size_t k);

/// 1 - harmonic mean of the components clamped to [0, 1].
double pr_distance(const Corpus& ci, const Corpus& cj, std::size_t k,
                   DocDistance kind);
double dc_distance(const Corpus& ci, const Corpus& cj, std::size_t k,
                   DocDistance kind);
double pr_distance(const PrDcComponents& c);
double dc_distance(const PrDcComponents& c);

/// Frechet distance between Gaussian fits of the two corpora:
/// |mu_a - mu_b|^2 + Tr(S_a + S_b - 2 (S_a S_b)^{1/2}), with unbiased sample
/// covariances. Needs at least two documents per corpus.
double fid(const Corpus& a, const Corpus& b);

/// Scores any built-in metric on a precomputed pair. External metrics cannot
/// be evaluated here and throw std::invalid_argument.
double evaluate(const MetricId& metric, const PairDistances& d);
double evaluate(const MetricId& metric, const Corpus& a, const Corpus& b,
                DocDistance kind);

}  // namespace corpdist

#endif  // CORPDIST_METRICS_HPP_
