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

// Brute-force reference implementations used only by tests. They work on
// plain nested vectors and share no code with the library, so a bug in the
// library's matrix or k-NN plumbing cannot hide behind a matching bug here.

#ifndef CORPDIST_TESTS_ORACLES_HPP_
#define CORPDIST_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "corpdist/vectorspace.hpp"

namespace oracle {

using Points = std::vector<std::vector<double>>;

enum class Delta { kCosine, kEuclidean };

inline double delta(Delta kind, const std::vector<double>& u,
                    const std::vector<double>& v) {
  if (kind == Delta::kEuclidean) {
    double s = 0.0;
    for (std::size_t t = 0; t < u.size(); ++t) s += (u[t] - v[t]) * (u[t] - v[t]);
    return std::sqrt(s);
  }
  if (u == v) return 0.0;
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t t = 0; t < u.size(); ++t) {
    dot += u[t] * v[t];
    nu += u[t] * u[t];
    nv += v[t] * v[t];
  }
  const double d = 1.0 - dot / (std::sqrt(nu) * std::sqrt(nv));
  return std::min(2.0, std::max(0.0, d));
}

inline double energy(Delta kind, const Points& a, const Points& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (const auto& x : a)
    for (const auto& y : b) ab += delta(kind, x, y);
  for (const auto& x : a)
    for (const auto& y : a) aa += delta(kind, x, y);
  for (const auto& x : b)
    for (const auto& y : b) bb += delta(kind, x, y);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  return 2.0 * ab / (na * nb) - aa / (na * na) - bb / (nb * nb);
}

inline double directed(Delta kind, const Points& x, const Points& y) {
  double total = 0.0;
  for (const auto& p : x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : y) best = std::min(best, delta(kind, p, r));
    total += best;
  }
  return total / static_cast<double>(x.size());
}

inline double hm(double a, double b) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  return 2.0 * a * b / (a + b);
}

inline double ahd(Delta kind, const Points& x, const Points& y) {
  return 0.5 * (directed(kind, x, y) + directed(kind, y, x));
}

inline double irpr(Delta kind, const Points& x, const Points& y) {
  return hm(directed(kind, x, y), directed(kind, y, x));
}

// Rank of pool[j] as seen from probe: number of pool members strictly
// ahead of it under (distance, index) order. Member j is among the k
// nearest iff its rank is below k.
inline std::size_t rank_of(Delta kind, const std::vector<double>& probe,
                           const Points& pool, std::size_t j) {
  const double dj = delta(kind, probe, pool[j]);
  std::size_t ahead = 0;
  for (std::size_t t = 0; t < pool.size(); ++t) {
    const double dt = delta(kind, probe, pool[t]);
    if (dt < dj || (dt == dj && t < j)) ++ahead;
  }
  return ahead;
}

// Share of `pool` that is among the k nearest (within pool) of some probe.
inline double reached_share(Delta kind, const Points& probes, const Points& pool,
                            std::size_t k) {
  std::size_t reached = 0;
  for (std::size_t j = 0; j < pool.size(); ++j) {
    for (const auto& x : probes) {
      if (rank_of(kind, x, pool, j) < k) {
        ++reached;
        break;
      }
    }
  }
  return static_cast<double>(reached) / static_cast<double>(pool.size());
}

inline double precision(Delta kind, const Points& ci, const Points& cj,
                        std::size_t k) {
  return reached_share(kind, ci, cj, k);
}

inline double recall(Delta kind, const Points& ci, const Points& cj,
                     std::size_t k) {
  return reached_share(kind, cj, ci, k);
}

inline double density(Delta kind, const Points& ci, const Points& cj,
                      std::size_t k) {
  double memberships = 0.0;
  for (std::size_t j = 0; j < cj.size(); ++j)
    for (const auto& x : ci)
      if (rank_of(kind, x, cj, j) < k) memberships += 1.0;
  return memberships / (static_cast<double>(k) * static_cast<double>(cj.size()));
}

inline double coverage(Delta kind, const Points& ci, const Points& cj,
                       std::size_t k) {
  std::size_t covered = 0;
  for (std::size_t s = 0; s < ci.size(); ++s) {
    double own = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < ci.size(); ++t)
      if (t != s) own = std::min(own, delta(kind, ci[s], ci[t]));
    // k-th nearest in cj: the member whose rank is k - 1.
    double kth = 0.0;
    for (std::size_t j = 0; j < cj.size(); ++j)
      if (rank_of(kind, ci[s], cj, j) == k - 1) kth = delta(kind, ci[s], cj[j]);
    if (own < kth) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(ci.size());
}

inline double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

inline double pr_distance(Delta kind, const Points& ci, const Points& cj,
                          std::size_t k) {
  return 1.0 - hm(clamp01(precision(kind, ci, cj, k)),
                  clamp01(recall(kind, ci, cj, k)));
}

inline double dc_distance(Delta kind, const Points& ci, const Points& cj,
                          std::size_t k) {
  return 1.0 - hm(clamp01(density(kind, ci, cj, k)),
                  clamp01(coverage(kind, ci, cj, k)));
}

// FID for q = 2 from scalar formulas: the trace of the square root of
// Sa*Sb is sqrt(tr + 2 sqrt(det)) for a product with nonnegative spectrum.
inline double fid_2d(const Points& a, const Points& b) {
  auto moments = [](const Points& x, double mean[2], double cov[3]) {
    const double n = static_cast<double>(x.size());
    mean[0] = mean[1] = 0.0;
    for (const auto& p : x) mean[0] += p[0], mean[1] += p[1];
    mean[0] /= n, mean[1] /= n;
    cov[0] = cov[1] = cov[2] = 0.0;
    for (const auto& p : x) {
      cov[0] += (p[0] - mean[0]) * (p[0] - mean[0]);
      cov[1] += (p[0] - mean[0]) * (p[1] - mean[1]);
      cov[2] += (p[1] - mean[1]) * (p[1] - mean[1]);
    }
    for (int t = 0; t < 3; ++t) cov[t] /= n - 1.0;
  };
  double ma[2], mb[2], sa[3], sb[3];
  moments(a, ma, sa);
  moments(b, mb, sb);
  // P = Sa * Sb with Sa = [[sa0, sa1], [sa1, sa2]].
  const double p00 = sa[0] * sb[0] + sa[1] * sb[1];
  const double p01 = sa[0] * sb[1] + sa[1] * sb[2];
  const double p10 = sa[1] * sb[0] + sa[2] * sb[1];
  const double p11 = sa[1] * sb[1] + sa[2] * sb[2];
  const double tr = p00 + p11;
  const double det = std::max(0.0, p00 * p11 - p01 * p10);
  const double tr_sqrt = std::sqrt(std::max(0.0, tr + 2.0 * std::sqrt(det)));
  const double dm = (ma[0] - mb[0]) * (ma[0] - mb[0]) +
                    (ma[1] - mb[1]) * (ma[1] - mb[1]);
  return dm + sa[0] + sa[2] + sb[0] + sb[2] - 2.0 * tr_sqrt;
}

inline Points random_points(std::mt19937_64& gen, std::size_t n, std::size_t q,
                            double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Points out(n, std::vector<double>(q));
  for (auto& p : out)
    for (auto& v : p) v = u(gen);
  return out;
}

inline corpdist::Corpus to_corpus(const Points& pts,
                                  const std::string& prefix = "d") {
  std::vector<corpdist::EmbeddedDoc> docs;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    docs.push_back({prefix + std::to_string(i), std::nullopt, pts[i]});
  }
  return corpdist::Corpus(std::move(docs));
}

inline Delta to_oracle(corpdist::DocDistance kind) {
  return kind == corpdist::DocDistance::kCosine ? Delta::kCosine
                                                : Delta::kEuclidean;
}

}  // namespace oracle

#endif  // CORPDIST_TESTS_ORACLES_HPP_
