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

#include "corpdist/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace corpdist {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

double matrix_mean(const DistanceMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (double v : m.row(i)) sum += v;
  }
  return sum / (static_cast<double>(m.rows()) * static_cast<double>(m.cols()));
}

double mean_row_min(const DistanceMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    sum += *std::min_element(row.begin(), row.end());
  }
  return sum / static_cast<double>(m.rows());
}

void require_k(std::size_t k) {
  if (k == 0) throw std::invalid_argument("neighborhood size k must be >= 1");
}

// Fraction of the columns of `m` that appear in the k-neighborhood of at
// least one row.
double covered_share(const DistanceMatrix& m, std::size_t k) {
  std::vector<bool> hit(m.cols(), false);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j : k_smallest(m.row(i), k)) hit[j] = true;
  }
  const auto n = std::count(hit.begin(), hit.end(), true);
  return static_cast<double>(n) / static_cast<double>(m.cols());
}

}  // namespace

MetricId MetricId::pr(std::size_t k) {
  require_k(k);
  return {MetricKind::kPr, k, {}};
}

MetricId MetricId::dc(std::size_t k) {
  require_k(k);
  return {MetricKind::kDc, k, {}};
}

MetricId MetricId::external(std::string label, std::optional<std::size_t> k) {
  if (label.empty()) throw std::invalid_argument("external metric needs a label");
  if (k) require_k(*k);
  return {MetricKind::kExternal, k, std::move(label)};
}

std::string MetricId::name() const {
  switch (kind) {
    case MetricKind::kEnergy:
      return "ENERGY";
    case MetricKind::kAhd:
      return "AHD";
    case MetricKind::kIrpr:
      return "IRPR";
    case MetricKind::kPr:
      return "PR";
    case MetricKind::kDc:
      return "DC";
    case MetricKind::kFid:
      return "FID";
    case MetricKind::kExternal:
      return label;
  }
  return label;
}

std::string MetricId::display_name() const {
  return k ? name() + "_" + std::to_string(*k) : name();
}

MetricId parse_metric(std::string_view name, std::optional<std::size_t> k) {
  const std::string u = upper(name);
  auto no_k = [&](MetricId id) {
    if (k) throw std::invalid_argument(u + " does not take a k value");
    return id;
  };
  auto need_k = [&](bool is_pr) {
    if (!k) throw std::invalid_argument(u + " requires a k value");
    return is_pr ? MetricId::pr(*k) : MetricId::dc(*k);
  };
  if (u == "ENERGY") return no_k(MetricId::energy());
  if (u == "AHD") return no_k(MetricId::ahd());
  if (u == "IRPR") return no_k(MetricId::irpr());
  if (u == "FID") return no_k(MetricId::fid());
  if (u == "PR") return need_k(true);
  if (u == "DC") return need_k(false);
  return MetricId::external(std::string(name), k);
}

MetricId parse_metric_token(std::string_view token) {
  const auto us = token.rfind('_');
  if (us != std::string_view::npos && us + 1 < token.size()) {
    const std::string_view digits = token.substr(us + 1);
    std::size_t k = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) {
      return parse_metric(token.substr(0, us), k);
    }
  }
  return parse_metric(token, std::nullopt);
}

double harmonic_mean(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return 2.0 * a * b / (a + b);
}

PairDistances::PairDistances(const Corpus& x, const Corpus& y, DocDistance kind)
    : x_(&x),
      y_(&y),
      xy_(cross_distances(x, y, kind)),
      yx_(xy_.transposed()),
      xx_(self_distances(x, kind)),
      yy_(self_distances(y, kind)) {}

double energy_distance(const PairDistances& d) {
  const double cross = matrix_mean(d.xy());
  return 2.0 * cross - matrix_mean(d.xx()) - matrix_mean(d.yy());
}

double energy_distance(const Corpus& a, const Corpus& b, DocDistance kind) {
  return energy_distance(PairDistances(a, b, kind));
}

double directed_avg_nn(const Corpus& x, const Corpus& y, DocDistance kind) {
  return mean_row_min(cross_distances(x, y, kind));
}

double ahd(const PairDistances& d) {
  return (mean_row_min(d.xy()) + mean_row_min(d.yx())) / 2.0;
}

double ahd(const Corpus& x, const Corpus& y, DocDistance kind) {
  const DistanceMatrix xy = cross_distances(x, y, kind);
  return (mean_row_min(xy) + mean_row_min(xy.transposed())) / 2.0;
}

double irpr(const PairDistances& d) {
  return harmonic_mean(mean_row_min(d.xy()), mean_row_min(d.yx()));
}

double irpr(const Corpus& x, const Corpus& y, DocDistance kind) {
  const DistanceMatrix xy = cross_distances(x, y, kind);
  return harmonic_mean(mean_row_min(xy), mean_row_min(xy.transposed()));
}

PrDcComponents pr_components(const PairDistances& d, std::size_t k) {
  require_k(k);
  return {covered_share(d.xy(), k), covered_share(d.yx(), k), kNaN, kNaN};
}

PrDcComponents pr_components(const Corpus& ci, const Corpus& cj, std::size_t k,
                             DocDistance kind) {
  require_k(k);
  const DistanceMatrix ij = cross_distances(ci, cj, kind);
  return {covered_share(ij, k), covered_share(ij.transposed(), k), kNaN, kNaN};
}

PrDcComponents dc_components(const PairDistances& d, std::size_t k) {
  require_k(k);
  const std::size_t ni = d.x().size();
  const std::size_t nj = d.y().size();
  if (ni < 2) {
    throw std::invalid_argument(
        "coverage needs at least two documents in the reference corpus");
  }

  std::size_t memberships = 0;
  std::size_t covered = 0;
  for (std::size_t x = 0; x < ni; ++x) {
    const auto row = d.xy().row(x);
    const auto nbrs = k_smallest(row, k);
    memberships += nbrs.size();
    const double kth_in_cj = row[nbrs.back()];

    double nearest_in_ci = std::numeric_limits<double>::infinity();
    const auto own = d.xx().row(x);
    for (std::size_t x2 = 0; x2 < ni; ++x2) {
      if (x2 != x) nearest_in_ci = std::min(nearest_in_ci, own[x2]);
    }
    if (nearest_in_ci < kth_in_cj) ++covered;
  }
  const double density = static_cast<double>(memberships) /
                         (static_cast<double>(k) * static_cast<double>(nj));
  const double coverage = static_cast<double>(covered) / static_cast<double>(ni);
  return {kNaN, kNaN, density, coverage};
}

PrDcComponents dc_components(const Corpus& ci, const Corpus& cj, std::size_t k,
                             DocDistance kind) {
  return dc_components(PairDistances(ci, cj, kind), k);
}

double pr_distance(const PrDcComponents& c) {
  return 1.0 - harmonic_mean(std::clamp(c.precision, 0.0, 1.0),
                             std::clamp(c.recall, 0.0, 1.0));
}

double dc_distance(const PrDcComponents& c) {
  return 1.0 - harmonic_mean(std::clamp(c.density, 0.0, 1.0),
                             std::clamp(c.coverage, 0.0, 1.0));
}

double pr_distance(const Corpus& ci, const Corpus& cj, std::size_t k,
                   DocDistance kind) {
  return pr_distance(pr_components(ci, cj, k, kind));
}

double dc_distance(const Corpus& ci, const Corpus& cj, std::size_t k,
                   DocDistance kind) {
  return dc_distance(dc_components(ci, cj, k, kind));
}

double evaluate(const MetricId& metric, const PairDistances& d) {
  switch (metric.kind) {
    case MetricKind::kEnergy:
      return energy_distance(d);
    case MetricKind::kAhd:
      return ahd(d);
    case MetricKind::kIrpr:
      return irpr(d);
    case MetricKind::kPr:
      return pr_distance(pr_components(d, metric.k.value()));
    case MetricKind::kDc:
      return dc_distance(dc_components(d, metric.k.value()));
    case MetricKind::kFid:
      return fid(d.x(), d.y());
    case MetricKind::kExternal:
      break;
  }
  throw std::invalid_argument("metric '" + metric.display_name() +
                              "' is external and cannot be computed here");
}

double evaluate(const MetricId& metric, const Corpus& a, const Corpus& b,
                DocDistance kind) {
  if (metric.kind == MetricKind::kFid) return fid(a, b);
  return evaluate(metric, PairDistances(a, b, kind));
}

}  // namespace corpdist
