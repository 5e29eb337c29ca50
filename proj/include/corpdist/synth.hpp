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

// Synthetic paired samples from a Gaussian mixture, group-shift
// perturbations, and one-axis perturbation sweeps.

#ifndef CORPDIST_SYNTH_HPP_
#define CORPDIST_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "corpdist/metrics.hpp"
#include "corpdist/random.hpp"
#include "corpdist/vectorspace.hpp"

namespace corpdist {

struct MixtureSpec {
  std::size_t q = 2;
  std::size_t n_components = 3;
  double kappa = 1.0;  // per-coordinate standard deviation of a component
  double box_lo = -10.0;
  double box_hi = 10.0;
  std::size_t m = 300;
};

/// A and B with a_i ~ b_i: b_i is a_i plus N(0, sigma^2 I) jitter.
struct PairedSample {
  Corpus a;
  Corpus b;
  std::vector<std::size_t> component_of;
  std::vector<Vector> centroids;
};

/// Centroids are uniform in the box; component sizes are as equal as
/// possible (the first m % n_components components get one extra point) and
/// the assignment order is shuffled. Ids are "a<i>"/"b<i>", pair_id "<i>".
PairedSample gen_paired_sample(const MixtureSpec& spec, double sigma,
                               std::uint64_t seed);

enum class ShiftDirection { kAwayFromCentroid, kRandom };

std::string_view to_string(ShiftDirection direction);
ShiftDirection parse_shift_direction(std::string_view name);

struct Perturbation {
  Corpus b;
  std::vector<std::size_t> moved;  // ascending indices into B
  std::size_t origin;              // y*
  Vector shift;                    // z, |z| = delta
};

/// Uniform point on the sphere of radius `radius` in R^q.
Vector random_sphere_point(std::size_t q, double radius, Rng& rng);

/// round(p * size), halves rounded up.
std::size_t perturbed_count(double p, std::size_t size);

/// Translates y* and its round(p|B|) - 1 nearest (Euclidean) neighbors in B
/// by one common vector of length delta. Under kAwayFromCentroid the vector
/// points from y*'s component centroid through y*; an origin sitting exactly
/// on its centroid is redrawn.
Perturbation perturb(const Corpus& b, const std::vector<Vector>& centroids,
                     const std::vector<std::size_t>& component_of, double p,
                     double delta, ShiftDirection direction,
                     std::uint64_t seed);

enum class GridAxis { kProportion, kShift, kDimension };

std::string_view to_string(GridAxis axis);
GridAxis parse_grid_axis(std::string_view name);

struct Grid {
  GridAxis axis;
  std::vector<double> values;
};

struct SweepConfig {
  MixtureSpec mixture;
  double sigma = 0.1;
  double p = 0.1;
  double delta = 3.0;
  ShiftDirection direction = ShiftDirection::kAwayFromCentroid;
  /// Exactly one entry; the fixed parameters above supply the other axes.
  std::vector<Grid> grids;
  std::size_t repetitions = 20;
  std::vector<MetricId> metrics;
  DocDistance distance = DocDistance::kEuclidean;
  std::uint64_t seed = 0;
};

struct SweepRecord {
  MetricId metric;
  GridAxis axis;
  double grid_value;
  std::size_t rep;  // 1-based
  double value;
};

/// Scores d(A, B') for every metric, grid value and repetition. For p and
/// delta grids one paired sample is drawn up front; for a q grid a fresh
/// sample is drawn per dimension. All metrics of one repetition share the
/// same perturbed B'. Records are ordered by (metric, grid position, rep).
std::vector<SweepRecord> sweep(const SweepConfig& config);

/// Same, on a caller-provided sample (p or delta grids only).
std::vector<SweepRecord> sweep(const PairedSample& sample,
                               const SweepConfig& config);

}  // namespace corpdist

#endif  // CORPDIST_SYNTH_HPP_
