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

#include "corpdist/synth.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace corpdist {
namespace {

enum Stream : std::uint64_t {
  kCentroids = 1,
  kAssignment = 2,
  kPoints = 3,
  kJitter = 4,
  kSample = 10,
  kPerturb = 11,
};

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void validate(const MixtureSpec& spec, double sigma) {
  if (spec.q < 1) throw std::invalid_argument("q must be >= 1");
  if (spec.n_components < 1) {
    throw std::invalid_argument("need at least one mixture component");
  }
  if (!(spec.kappa > 0.0)) throw std::invalid_argument("kappa must be > 0");
  if (!(spec.box_lo < spec.box_hi)) {
    throw std::invalid_argument("centroid box must have box_lo < box_hi");
  }
  if (spec.m < spec.n_components) {
    throw std::invalid_argument("m must be >= the number of components");
  }
  if (!(sigma > 0.0) || !(sigma < spec.kappa)) {
    throw std::invalid_argument("jitter sigma must satisfy 0 < sigma < kappa");
  }
}

}  // namespace

PairedSample gen_paired_sample(const MixtureSpec& spec, double sigma,
                               std::uint64_t seed) {
  validate(spec, sigma);

  Rng centroid_rng(derive_seed(seed, {kCentroids}));
  std::vector<Vector> centroids(spec.n_components, Vector(spec.q));
  for (auto& c : centroids) {
    for (double& x : c) x = centroid_rng.uniform(spec.box_lo, spec.box_hi);
  }

  std::vector<std::size_t> component_of;
  component_of.reserve(spec.m);
  for (std::size_t j = 0; j < spec.n_components; ++j) {
    const std::size_t count = spec.m / spec.n_components +
                              (j < spec.m % spec.n_components ? 1 : 0);
    component_of.insert(component_of.end(), count, j);
  }
  Rng assignment_rng(derive_seed(seed, {kAssignment}));
  assignment_rng.shuffle(component_of);

  Rng point_rng(derive_seed(seed, {kPoints}));
  Rng jitter_rng(derive_seed(seed, {kJitter}));
  std::vector<EmbeddedDoc> a_docs, b_docs;
  a_docs.reserve(spec.m);
  b_docs.reserve(spec.m);
  for (std::size_t i = 0; i < spec.m; ++i) {
    const Vector& mu = centroids[component_of[i]];
    Vector a(spec.q), b(spec.q);
    for (std::size_t d = 0; d < spec.q; ++d) {
      a[d] = point_rng.normal(mu[d], spec.kappa);
      b[d] = a[d] + jitter_rng.normal(0.0, sigma);
    }
    const std::string key = std::to_string(i);
    a_docs.push_back({"a" + key, key, std::move(a)});
    b_docs.push_back({"b" + key, key, std::move(b)});
  }
  return {Corpus(std::move(a_docs)), Corpus(std::move(b_docs)),
          std::move(component_of), std::move(centroids)};
}

std::string_view to_string(ShiftDirection direction) {
  return direction == ShiftDirection::kRandom ? "random" : "away";
}

ShiftDirection parse_shift_direction(std::string_view name) {
  if (name == "away") return ShiftDirection::kAwayFromCentroid;
  if (name == "random") return ShiftDirection::kRandom;
  throw std::invalid_argument("unknown shift direction '" + std::string(name) +
                              "' (expected away|random)");
}

Vector random_sphere_point(std::size_t q, double radius, Rng& rng) {
  Vector z(q);
  double len = 0.0;
  do {
    for (double& x : z) x = rng.normal();
    len = norm(z);
  } while (len == 0.0);
  for (double& x : z) x *= radius / len;
  return z;
}

std::size_t perturbed_count(double p, std::size_t size) {
  return static_cast<std::size_t>(std::floor(p * static_cast<double>(size) + 0.5));
}

Perturbation perturb(const Corpus& b, const std::vector<Vector>& centroids,
                     const std::vector<std::size_t>& component_of, double p,
                     double delta, ShiftDirection direction,
                     std::uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in (0, 1]");
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  if (component_of.size() != b.size()) {
    throw std::invalid_argument("component_of must cover every point of B");
  }
  const std::size_t k = perturbed_count(p, b.size());
  if (k == 0) {
    throw std::invalid_argument("round(p * |B|) is 0: nothing to perturb");
  }

  Rng rng(seed);
  std::size_t origin = 0;
  Vector z(b.dim(), 0.0);
  for (;;) {
    origin = rng.index(b.size());
    if (direction == ShiftDirection::kRandom) {
      z = random_sphere_point(b.dim(), delta, rng);
      break;
    }
    const Vector& mu = centroids.at(component_of[origin]);
    const auto y = b.vector(origin);
    for (std::size_t d = 0; d < z.size(); ++d) z[d] = y[d] - mu[d];
    const double len = norm(z);
    if (len == 0.0) continue;
    for (double& x : z) x *= delta / len;
    break;
  }

  std::vector<double> to_origin(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    to_origin[i] = euclidean_distance(b.vector(origin), b.vector(i));
  }
  std::vector<std::size_t> moved = k_smallest(to_origin, k - 1, origin);
  moved.push_back(origin);
  std::sort(moved.begin(), moved.end());

  std::vector<EmbeddedDoc> docs = b.docs();
  if (delta > 0.0) {
    for (std::size_t i : moved) {
      for (std::size_t d = 0; d < z.size(); ++d) docs[i].vector[d] += z[d];
    }
  }
  return {Corpus(std::move(docs)), std::move(moved), origin, std::move(z)};
}

std::string_view to_string(GridAxis axis) {
  switch (axis) {
    case GridAxis::kProportion:
      return "p";
    case GridAxis::kShift:
      return "delta";
    case GridAxis::kDimension:
      return "q";
  }
  return "?";
}

GridAxis parse_grid_axis(std::string_view name) {
  if (name == "p") return GridAxis::kProportion;
  if (name == "delta") return GridAxis::kShift;
  if (name == "q") return GridAxis::kDimension;
  throw std::invalid_argument("unknown grid axis '" + std::string(name) +
                              "' (expected p|delta|q)");
}

namespace {

const Grid& single_grid(const SweepConfig& config) {
  if (config.grids.size() != 1) {
    throw std::invalid_argument(
        "a sweep varies exactly one of p, delta, q (got " +
        std::to_string(config.grids.size()) + " grids)");
  }
  const Grid& grid = config.grids.front();
  if (grid.values.empty()) throw std::invalid_argument("empty sweep grid");
  for (double v : grid.values) {
    if (grid.axis == GridAxis::kDimension &&
        (v < 1.0 || v != std::floor(v))) {
      throw std::invalid_argument("q grid values must be positive integers");
    }
  }
  return grid;
}

void check_metrics(const SweepConfig& config) {
  if (config.metrics.empty()) throw std::invalid_argument("no metrics requested");
  if (config.repetitions < 1) throw std::invalid_argument("r must be >= 1");
  for (const auto& m : config.metrics) {
    if (m.kind == MetricKind::kExternal) {
      throw std::invalid_argument("cannot compute external metric '" +
                                  m.display_name() + "'");
    }
  }
}

// Fills the records of grid position `g` into their final slots.
void score_cell(const PairedSample& sample, const SweepConfig& config,
                const Grid& grid, std::size_t g,
                std::vector<SweepRecord>& records) {
  const double value = grid.values[g];
  const double p = grid.axis == GridAxis::kProportion ? value : config.p;
  const double delta = grid.axis == GridAxis::kShift ? value : config.delta;
  const std::size_t n_grid = grid.values.size();
  const std::size_t reps = config.repetitions;

  for (std::size_t rep = 1; rep <= reps; ++rep) {
    const Perturbation moved =
        perturb(sample.b, sample.centroids, sample.component_of, p, delta,
                config.direction, derive_seed(config.seed, {kPerturb, g, rep}));
    std::optional<PairDistances> tables;
    for (std::size_t m = 0; m < config.metrics.size(); ++m) {
      const MetricId& metric = config.metrics[m];
      double score;
      if (metric.kind == MetricKind::kFid) {
        score = fid(sample.a, moved.b);
      } else {
        if (!tables) tables.emplace(sample.a, moved.b, config.distance);
        score = evaluate(metric, *tables);
      }
      records[(m * n_grid + g) * reps + (rep - 1)] = {metric, grid.axis, value,
                                                      rep, score};
    }
  }
}

}  // namespace

std::vector<SweepRecord> sweep(const PairedSample& sample,
                               const SweepConfig& config) {
  const Grid& grid = single_grid(config);
  check_metrics(config);
  if (grid.axis == GridAxis::kDimension) {
    throw std::invalid_argument(
        "a q sweep draws its own samples; use sweep(config)");
  }
  std::vector<SweepRecord> records(config.metrics.size() * grid.values.size() *
                                   config.repetitions);
  for (std::size_t g = 0; g < grid.values.size(); ++g) {
    score_cell(sample, config, grid, g, records);
  }
  return records;
}

std::vector<SweepRecord> sweep(const SweepConfig& config) {
  const Grid& grid = single_grid(config);
  check_metrics(config);
  if (grid.axis != GridAxis::kDimension) {
    return sweep(gen_paired_sample(config.mixture, config.sigma,
                                   derive_seed(config.seed, {kSample})),
                 config);
  }
  std::vector<SweepRecord> records(config.metrics.size() * grid.values.size() *
                                   config.repetitions);
  for (std::size_t g = 0; g < grid.values.size(); ++g) {
    MixtureSpec spec = config.mixture;
    spec.q = static_cast<std::size_t>(grid.values[g]);
    const PairedSample sample = gen_paired_sample(
        spec, config.sigma, derive_seed(config.seed, {kSample, g}));
    score_cell(sample, config, grid, g, records);
  }
  return records;
}

}  // namespace corpdist
