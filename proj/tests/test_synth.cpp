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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "corpdist/random.hpp"
#include "corpdist/synth.hpp"

namespace corpdist {
namespace {

double dist(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t t = 0; t < u.size(); ++t) s += (u[t] - v[t]) * (u[t] - v[t]);
  return std::sqrt(s);
}

TEST(Rng, DerivedSeedsAreStableAndDistinct) {
  EXPECT_EQ(derive_seed(5, {1, 2}), derive_seed(5, {1, 2}));
  EXPECT_NE(derive_seed(5, {1, 2}), derive_seed(5, {2, 1}));
  EXPECT_NE(derive_seed(5, {1}), derive_seed(6, {1}));
  EXPECT_NE(derive_seed(5, {1}), derive_seed(5, {1, 0}));
}

TEST(Rng, UniformAndIndexRanges) {
  Rng rng(3);
  double sum = 0.0;
  for (int t = 0; t < 100000; ++t) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    ASSERT_LT(rng.index(7), 7u);
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.01);
}

TEST(Rng, NormalMoments) {
  Rng rng(4);
  double s1 = 0.0, s2 = 0.0;
  constexpr int kN = 200000;
  for (int t = 0; t < kN; ++t) {
    const double x = rng.normal();
    s1 += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s1 / kN, 0.0, 0.01);
  EXPECT_NEAR(s2 / kN, 1.0, 0.02);
}

TEST(Rng, SampleWithoutReplacement) {
  Rng rng(5);
  for (std::size_t count = 0; count <= 12; ++count) {
    const auto picks = rng.sample_without_replacement(12, count);
    ASSERT_EQ(picks.size(), count);
    EXPECT_EQ(std::set<std::size_t>(picks.begin(), picks.end()).size(), count);
    for (auto p : picks) EXPECT_LT(p, 12u);
  }
  EXPECT_THROW(rng.sample_without_replacement(3, 4), std::invalid_argument);
}

TEST(Rng, ReproducibleStreams) {
  Rng x(99), y(99);
  for (int t = 0; t < 1000; ++t) {
    ASSERT_EQ(x.uniform(), y.uniform());
    ASSERT_EQ(x.normal(), y.normal());
  }
}

TEST(GenPairedSample, ShapeAndDeterminism) {
  const MixtureSpec spec;  // m = 300, q = 2, three components
  const PairedSample s = gen_paired_sample(spec, 0.1, 7);
  ASSERT_EQ(s.a.size(), 300u);
  ASSERT_EQ(s.b.size(), 300u);
  EXPECT_EQ(s.a.dim(), 2u);
  ASSERT_EQ(s.component_of.size(), 300u);
  ASSERT_EQ(s.centroids.size(), 3u);
  for (const auto& c : s.centroids)
    for (double x : c) {
      EXPECT_GE(x, -10.0);
      EXPECT_LT(x, 10.0);
    }
  for (std::size_t i = 0; i < 300; ++i) {
    EXPECT_EQ(s.a[i].pair_id, s.b[i].pair_id);
    EXPECT_LT(s.component_of[i], 3u);
  }
  const PairedSample t = gen_paired_sample(spec, 0.1, 7);
  for (std::size_t i = 0; i < 300; ++i) {
    EXPECT_EQ(s.a[i].vector, t.a[i].vector);
    EXPECT_EQ(s.b[i].vector, t.b[i].vector);
  }
}

TEST(GenPairedSample, JitterNormMatchesChiMean) {
  // |b_i - a_i| / sigma is chi with q = 2 degrees of freedom: mean sqrt(pi/2).
  MixtureSpec spec;
  spec.m = 3000;
  const double sigma = 0.1;
  const PairedSample s = gen_paired_sample(spec, sigma, 11);
  double mean = 0.0;
  for (std::size_t i = 0; i < spec.m; ++i) mean += dist(s.a.vector(i), s.b.vector(i));
  mean /= static_cast<double>(spec.m);
  const double expected = sigma * std::sqrt(std::numbers::pi / 2.0);
  EXPECT_NEAR(mean, expected, 0.05 * expected);
}

TEST(GenPairedSample, ComponentSpreadMatchesKappa) {
  MixtureSpec spec;
  spec.m = 3000;
  spec.kappa = 2.0;
  const PairedSample s = gen_paired_sample(spec, 0.1, 13);
  double ss = 0.0;
  for (std::size_t i = 0; i < spec.m; ++i) {
    const auto& mu = s.centroids[s.component_of[i]];
    for (std::size_t d = 0; d < spec.q; ++d) {
      ss += (s.a.vector(i)[d] - mu[d]) * (s.a.vector(i)[d] - mu[d]);
    }
  }
  EXPECT_NEAR(std::sqrt(ss / static_cast<double>(spec.m * spec.q)), 2.0, 0.1);
}

TEST(GenPairedSample, TinyJitter) {
  const PairedSample s = gen_paired_sample(MixtureSpec{}, 1e-9, 2);
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    EXPECT_LT(dist(s.a.vector(i), s.b.vector(i)), 1e-7);
  }
}

TEST(GenPairedSample, PairsAreCloserThanComponentMates) {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    MixtureSpec spec;
    spec.m = 60;
    const PairedSample s = gen_paired_sample(spec, 0.1, seed);
    double within = 0.0, cross = 0.0;
    std::size_t n_cross = 0;
    for (std::size_t i = 0; i < spec.m; ++i) {
      within += dist(s.a.vector(i), s.b.vector(i));
      for (std::size_t j = 0; j < spec.m; ++j) {
        if (j == i || s.component_of[j] != s.component_of[i]) continue;
        cross += dist(s.a.vector(i), s.b.vector(j));
        ++n_cross;
      }
    }
    if (within / static_cast<double>(spec.m) < cross / static_cast<double>(n_cross)) {
      ++wins;
    }
  }
  EXPECT_GE(wins, 99);
}

TEST(GenPairedSample, Preconditions) {
  EXPECT_THROW(gen_paired_sample(MixtureSpec{}, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(gen_paired_sample(MixtureSpec{}, 1.0, 1), std::invalid_argument);
  MixtureSpec small;
  small.m = 2;
  EXPECT_THROW(gen_paired_sample(small, 0.1, 1), std::invalid_argument);
  MixtureSpec flat;
  flat.q = 0;
  EXPECT_THROW(gen_paired_sample(flat, 0.1, 1), std::invalid_argument);
}

TEST(SpherePoint, NormAndMean) {
  Rng rng(17);
  constexpr int kDraws = 100000;
  constexpr double kDelta = 2.5;
  std::vector<double> mean(3, 0.0);
  for (int t = 0; t < kDraws; ++t) {
    const Vector z = random_sphere_point(3, kDelta, rng);
    double len = 0.0;
    for (std::size_t d = 0; d < 3; ++d) {
      len += z[d] * z[d];
      mean[d] += z[d] / kDraws;
    }
    ASSERT_NEAR(std::sqrt(len), kDelta, 1e-12);
  }
  for (double m : mean) EXPECT_LT(std::abs(m), 0.01 * kDelta);
}

// Brute-force audit of one perturbation: the moved set is the origin plus
// its k - 1 nearest other points, every moved point shifts by exactly z and
// everything else is untouched.
void audit(const PairedSample& s, const Perturbation& out, std::size_t k,
           double delta) {
  const Corpus& b = s.b;
  ASSERT_EQ(out.moved.size(), k);
  EXPECT_TRUE(std::is_sorted(out.moved.begin(), out.moved.end()));
  EXPECT_TRUE(std::binary_search(out.moved.begin(), out.moved.end(), out.origin));

  std::vector<std::size_t> order(b.size());
  std::iota(order.begin(), order.end(), 0);
  const auto y = b.vector(out.origin);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    if (l == out.origin || r == out.origin) return l == out.origin && r != out.origin;
    return dist(y, b.vector(l)) < dist(y, b.vector(r));
  });
  std::vector<std::size_t> expected(order.begin(), order.begin() + static_cast<long>(k));
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(out.moved, expected);

  double zlen = 0.0;
  for (double v : out.shift) zlen += v * v;
  EXPECT_NEAR(std::sqrt(zlen), delta, 1e-9);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const bool moved = std::binary_search(out.moved.begin(), out.moved.end(), i);
    if (!moved || delta == 0.0) {
      EXPECT_EQ(out.b[i].vector, b[i].vector);
    } else {
      EXPECT_NEAR(dist(out.b.vector(i), b.vector(i)), delta, 1e-9);
    }
  }
}

TEST(Perturb, TenPercentOfThreeHundred) {
  const PairedSample s = gen_paired_sample(MixtureSpec{}, 0.1, 21);
  for (auto dir : {ShiftDirection::kAwayFromCentroid, ShiftDirection::kRandom}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto out = perturb(s.b, s.centroids, s.component_of, 0.1, 3.0, dir, seed);
      audit(s, out, 30, 3.0);
    }
  }
}

TEST(Perturb, AwayFromCentroidDirection) {
  const PairedSample s = gen_paired_sample(MixtureSpec{}, 0.1, 22);
  const auto out = perturb(s.b, s.centroids, s.component_of, 0.1, 2.0,
                           ShiftDirection::kAwayFromCentroid, 5);
  const auto& mu = s.centroids[s.component_of[out.origin]];
  const auto y = s.b.vector(out.origin);
  const double r = dist(y, mu);
  for (std::size_t d = 0; d < 2; ++d) {
    EXPECT_NEAR(out.shift[d], 2.0 * (y[d] - mu[d]) / r, 1e-12);
  }
}

TEST(Perturb, ZeroShiftAndSinglePoint) {
  const PairedSample s = gen_paired_sample(MixtureSpec{}, 0.1, 23);
  const auto still = perturb(s.b, s.centroids, s.component_of, 0.2, 0.0,
                             ShiftDirection::kRandom, 1);
  for (std::size_t i = 0; i < s.b.size(); ++i) EXPECT_EQ(still.b[i].vector, s.b[i].vector);
  const auto one = perturb(s.b, s.centroids, s.component_of, 0.002, 1.5,
                           ShiftDirection::kRandom, 2);
  audit(s, one, 1, 1.5);
}

TEST(Perturb, RedrawsOriginOnItsCentroid) {
  // Every point but one sits exactly on the centroid; the origin must be the
  // odd one out.
  std::vector<EmbeddedDoc> docs;
  for (int i = 0; i < 10; ++i) docs.push_back({std::to_string(i), {}, {0.0, 0.0}});
  docs[7].vector = {1.0, 0.0};
  const Corpus b(docs);
  const std::vector<Vector> centroids{{0.0, 0.0}};
  const std::vector<std::size_t> comp(10, 0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto out = perturb(b, centroids, comp, 0.1, 1.0,
                             ShiftDirection::kAwayFromCentroid, seed);
    EXPECT_EQ(out.origin, 7u);
    EXPECT_EQ(out.b[7].vector, (Vector{2.0, 0.0}));
  }
}

TEST(Perturb, Preconditions) {
  const PairedSample s = gen_paired_sample(MixtureSpec{}, 0.1, 24);
  auto call = [&](double p, double delta) {
    return perturb(s.b, s.centroids, s.component_of, p, delta,
                   ShiftDirection::kRandom, 1);
  };
  EXPECT_THROW(call(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(call(1.5, 1.0), std::invalid_argument);
  EXPECT_THROW(call(0.1, -1.0), std::invalid_argument);
  EXPECT_THROW(call(0.001, 1.0), std::invalid_argument);  // rounds to 0
  EXPECT_EQ(perturbed_count(0.1, 300), 30u);
  EXPECT_EQ(perturbed_count(0.005, 300), 2u);  // 1.5 rounds up
}

SweepConfig small_sweep() {
  SweepConfig c;
  c.mixture.m = 60;
  c.repetitions = 3;
  c.metrics = {MetricId::energy(), MetricId::irpr(), MetricId::pr(2)};
  c.grids = {{GridAxis::kShift, {0.0, 1.0, 3.0}}};
  c.seed = 4;
  return c;
}

TEST(Sweep, RecordsAndOrder) {
  const auto records = sweep(small_sweep());
  ASSERT_EQ(records.size(), 3u * 3u * 3u);
  for (std::size_t r = 0; r < records.size(); ++r) {
    EXPECT_EQ(records[r].axis, GridAxis::kShift);
    EXPECT_EQ(records[r].rep, r % 3 + 1);
  }
  EXPECT_EQ(records[0].metric, MetricId::energy());
  EXPECT_EQ(records.back().metric, MetricId::pr(2));
  EXPECT_EQ(records.back().grid_value, 3.0);
}

TEST(Sweep, ZeroShiftScoresUnperturbedSample) {
  const SweepConfig c = small_sweep();
  const auto records = sweep(c);
  const PairedSample s =
      gen_paired_sample(c.mixture, c.sigma, derive_seed(c.seed, {10}));
  const double base = energy_distance(s.a, s.b, c.distance);
  for (const auto& r : records) {
    if (r.metric == MetricId::energy() && r.grid_value == 0.0) {
      EXPECT_EQ(r.value, base);
    }
  }
}

TEST(Sweep, Deterministic) {
  const auto x = sweep(small_sweep());
  const auto y = sweep(small_sweep());
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t r = 0; r < x.size(); ++r) EXPECT_EQ(x[r].value, y[r].value);
}

TEST(Sweep, SingleCell) {
  SweepConfig c = small_sweep();
  c.repetitions = 1;
  c.metrics = {MetricId::fid()};
  c.grids = {{GridAxis::kProportion, {0.1}}};
  EXPECT_EQ(sweep(c).size(), 1u);
}

TEST(Sweep, DimensionAxisDrawsFreshSamples) {
  SweepConfig c = small_sweep();
  c.grids = {{GridAxis::kDimension, {2.0, 3.0}}};
  const auto records = sweep(c);
  EXPECT_EQ(records.size(), 3u * 2u * 3u);
  EXPECT_THROW(sweep(gen_paired_sample(c.mixture, c.sigma, 1), c),
               std::invalid_argument);
}

TEST(Sweep, Preconditions) {
  SweepConfig c = small_sweep();
  c.grids.push_back({GridAxis::kProportion, {0.1}});
  EXPECT_THROW(sweep(c), std::invalid_argument);
  c.grids.clear();
  EXPECT_THROW(sweep(c), std::invalid_argument);
  c = small_sweep();
  c.grids = {{GridAxis::kDimension, {2.5}}};
  EXPECT_THROW(sweep(c), std::invalid_argument);
  c = small_sweep();
  c.metrics = {MetricId::external("mauve")};
  EXPECT_THROW(sweep(c), std::invalid_argument);
}

}  // namespace
}  // namespace corpdist
