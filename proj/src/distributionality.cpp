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

#include "corpdist/distributionality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace corpdist {
namespace {

// Linear-interpolation quantile of sorted data (numpy's default).
double quantile(const std::vector<double>& sorted, double prob) {
  const double pos = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::map<std::size_t, std::vector<double>> StandardizedTable::by_ell() const {
  std::map<std::size_t, std::vector<double>> out;
  for (const auto& v : values) out[v.ell].push_back(v.value);
  return out;
}

StandardizedTable standardize(std::span<const DistanceRecord> records) {
  if (records.size() < 2) {
    throw std::invalid_argument("standardization needs at least two records");
  }
  const MetricId& metric = records.front().metric;
  double sum = 0.0;
  for (const auto& r : records) {
    if (r.metric != metric) {
      throw std::invalid_argument("standardize: records mix metrics " +
                                  metric.display_name() + " and " +
                                  r.metric.display_name());
    }
    if (!std::isfinite(r.value)) {
      throw std::invalid_argument("standardize: non-finite distance value");
    }
    sum += r.value;
  }
  const double n = static_cast<double>(records.size());
  const double mu = sum / n;
  double ss = 0.0;
  for (const auto& r : records) ss += (r.value - mu) * (r.value - mu);
  const double sigma = std::sqrt(ss / n);
  // A constant column leaves rounding residue in ss, so test the values.
  const bool constant = std::all_of(records.begin(), records.end(), [&](const auto& r) {
    return r.value == records.front().value;
  });
  if (constant || !(sigma > 0.0)) {
    throw std::invalid_argument("metric " + metric.display_name() +
                                " has zero variance on this sample");
  }

  StandardizedTable table{metric, {}, mu, sigma};
  table.values.reserve(records.size());
  for (const auto& r : records) {
    table.values.push_back({r.ell, r.rep, (r.value - mu) / sigma});
  }
  return table;
}

double silverman_bandwidth(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("KDE of an empty sample");
  const std::size_t n = sample.size();
  double s = 0.0;
  double iqr = 0.0;
  // Identical values get spread 0 exactly; the mean would leave rounding
  // residue in s and make the fallback depend on the data's scale.
  const bool constant = std::all_of(sample.begin(), sample.end(),
                                    [&](double x) { return x == sample.front(); });
  if (n >= 2 && !constant) {
    double mean = 0.0;
    for (double x : sample) mean += x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : sample) ss += (x - mean) * (x - mean);
    s = std::sqrt(ss / static_cast<double>(n - 1));
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  }
  double spread = std::min(s, iqr / 1.34);
  if (!(spread > 0.0)) spread = s;
  if (!(spread > 0.0)) spread = 1.0;
  const double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
  return std::max(h, kMinBandwidth);
}

KdeGrid kde(std::span<const double> sample, const GridSpec& grid) {
  if (sample.empty()) throw std::invalid_argument("KDE of an empty sample");
  if (grid.c < 1 || !(grid.a < grid.b)) {
    throw std::invalid_argument("KDE grid needs a < b and c >= 1");
  }
  KdeGrid out;
  out.grid = grid;
  out.bandwidth = silverman_bandwidth(sample);
  out.densities.assign(grid.c + 1, 0.0);

  const double h = out.bandwidth;
  const double norm =
      1.0 / (static_cast<double>(sample.size()) * h * std::sqrt(2.0 * std::numbers::pi));
  const double dx = grid.delta_x();
  for (std::size_t i = 0; i <= grid.c; ++i) {
    const double x = grid.a + static_cast<double>(i) * dx;
    double sum = 0.0;
    for (double xi : sample) {
      const double u = (x - xi) / h;
      sum += std::exp(-0.5 * u * u);
    }
    out.densities[i] = sum * norm;
  }
  return out;
}

double fan_deviation(const KdeGrid& f, const KdeGrid& g) {
  if (!(f.grid == g.grid) || f.densities.size() != g.densities.size()) {
    throw std::invalid_argument("fan_deviation: density grids differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.densities.size(); ++i) {
    const double d = f.densities[i] - g.densities[i];
    sum += d * d;
  }
  return sum * f.delta_x();
}

Trajectory trajectory(const StandardizedTable& table, const GridSpec& grid) {
  Trajectory t;
  t.metric = table.metric;
  const double total = static_cast<double>(table.values.size());
  for (const auto& [ell, values] : table.by_ell()) {
    t.densities.emplace(ell, kde(values, grid));
    t.weights.emplace(ell, static_cast<double>(values.size()) / total);
    t.counts.emplace(ell, values.size());
  }
  return t;
}

double weighted_deviation(const Trajectory& v, const Trajectory& w) {
  if (v.counts != w.counts) {
    throw std::invalid_argument("metrics " + v.metric.display_name() + " and " +
                                w.metric.display_name() +
                                " were not evaluated on the same KSC design");
  }
  double total = 0.0;
  for (const auto& [ell, weight] : v.weights) {
    total += weight * fan_deviation(v.densities.at(ell), w.densities.at(ell));
  }
  return total;
}

double weighted_deviation(const StandardizedTable& v,
                          const StandardizedTable& w, const GridSpec& grid) {
  return weighted_deviation(trajectory(v, grid), trajectory(w, grid));
}

std::string_view to_string(Label label) {
  return label == Label::kDistributional ? "DISTRIBUTIONAL"
                                         : "NON_DISTRIBUTIONAL";
}

DeviationReport classify(const Trajectory& candidate, const Trajectory& energy,
                         const Trajectory& ahd) {
  const double i_energy = weighted_deviation(candidate, energy);
  const double i_ahd = weighted_deviation(candidate, ahd);
  return {candidate.metric, i_energy, i_ahd,
          i_energy <= i_ahd ? Label::kDistributional
                            : Label::kNonDistributional};
}

DeviationReport classify(const StandardizedTable& candidate,
                         const StandardizedTable& energy,
                         const StandardizedTable& ahd, const GridSpec& grid) {
  return classify(trajectory(candidate, grid), trajectory(energy, grid),
                  trajectory(ahd, grid));
}

Classification classify_records(std::span<const DistanceRecord> records,
                                const GridSpec& grid) {
  std::vector<MetricId> order;
  std::map<MetricId, std::vector<DistanceRecord>> groups;
  for (const auto& r : records) {
    auto [it, inserted] = groups.try_emplace(r.metric);
    if (inserted) order.push_back(r.metric);
    it->second.push_back(r);
  }
  const auto energy = groups.find(MetricId::energy());
  const auto ahd = groups.find(MetricId::ahd());
  if (energy == groups.end() || ahd == groups.end()) {
    throw std::invalid_argument(
        "classification needs both ENERGY and AHD prototype rows");
  }
  const Trajectory energy_t = trajectory(standardize(energy->second), grid);
  const Trajectory ahd_t = trajectory(standardize(ahd->second), grid);

  Classification out;
  for (const auto& metric : order) {
    if (metric == MetricId::energy() || metric == MetricId::ahd()) continue;
    const auto& rows = groups[metric];
    const bool constant =
        std::all_of(rows.begin(), rows.end(),
                    [&](const DistanceRecord& r) { return r.value == rows.front().value; });
    if (constant) {
      out.degenerate.push_back(metric);
      continue;
    }
    out.reports.push_back(
        classify(trajectory(standardize(rows), grid), energy_t, ahd_t));
  }
  return out;
}

}  // namespace corpdist
