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

#include "corpdist/vectorspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace corpdist {
namespace {

void check_same_size(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("dimension mismatch: " +
                                std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()));
  }
}

}  // namespace

Corpus::Corpus(std::vector<EmbeddedDoc> docs) : docs_(std::move(docs)) {
  if (docs_.empty()) throw std::invalid_argument("corpus must be nonempty");
  dim_ = docs_.front().vector.size();
  if (dim_ == 0) throw std::invalid_argument("corpus dimension must be >= 1");

  std::unordered_set<std::string_view> ids;
  for (const auto& doc : docs_) {
    if (doc.vector.size() != dim_) {
      throw std::invalid_argument("document '" + doc.id + "' has dimension " +
                                  std::to_string(doc.vector.size()) +
                                  ", corpus dimension is " +
                                  std::to_string(dim_));
    }
    for (double x : doc.vector) {
      if (!std::isfinite(x)) {
        throw std::invalid_argument("document '" + doc.id +
                                    "' has a non-finite component");
      }
    }
    if (!ids.insert(doc.id).second) {
      throw std::invalid_argument("duplicate document id '" + doc.id + "'");
    }
  }
}

std::string_view to_string(DocDistance distance) {
  switch (distance) {
    case DocDistance::kCosine:
      return "cosine";
    case DocDistance::kEuclidean:
      return "euclidean";
  }
  return "unknown";
}

DocDistance parse_doc_distance(std::string_view name) {
  if (name == "cosine") return DocDistance::kCosine;
  if (name == "euclidean") return DocDistance::kEuclidean;
  throw std::invalid_argument("unknown document distance '" +
                              std::string(name) + "'");
}

double cosine_distance(std::span<const double> u, std::span<const double> v) {
  check_same_size(u, v);
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) {
    throw std::invalid_argument("cosine distance is undefined for a zero vector");
  }
  // Identical inputs are exactly 0 so that self-distances cancel exactly.
  if (std::equal(u.begin(), u.end(), v.begin())) return 0.0;
  return std::clamp(1.0 - dot / (std::sqrt(uu) * std::sqrt(vv)), 0.0, 2.0);
}

double euclidean_distance(std::span<const double> u,
                          std::span<const double> v) {
  check_same_size(u, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double doc_distance(DocDistance kind, std::span<const double> u,
                    std::span<const double> v) {
  return kind == DocDistance::kCosine ? cosine_distance(u, v)
                                      : euclidean_distance(u, v);
}

DistanceMatrix DistanceMatrix::transposed() const {
  DistanceMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

DistanceMatrix cross_distances(const Corpus& x, const Corpus& y,
                               DocDistance kind) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("corpora have different dimensions");
  }
  DistanceMatrix d(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      d(i, j) = doc_distance(kind, x.vector(i), y.vector(j));
    }
  }
  return d;
}

DistanceMatrix self_distances(const Corpus& x, DocDistance kind) {
  DistanceMatrix d(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      d(i, j) = d(j, i) = doc_distance(kind, x.vector(i), x.vector(j));
    }
  }
  return d;
}

std::vector<std::size_t> k_smallest(std::span<const double> distances,
                                    std::size_t k,
                                    std::optional<std::size_t> exclude) {
  const std::size_t available =
      distances.size() - (exclude && *exclude < distances.size() ? 1 : 0);
  if (k > available) {
    throw std::invalid_argument("k = " + std::to_string(k) +
                                " exceeds the " + std::to_string(available) +
                                " available neighbors");
  }
  std::vector<std::size_t> order;
  order.reserve(distances.size());
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (!exclude || *exclude != i) order.push_back(i);
  }
  auto by_distance_then_index = [&](std::size_t a, std::size_t b) {
    if (distances[a] != distances[b]) return distances[a] < distances[b];
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(k),
                    order.end(), by_distance_then_index);
  order.resize(k);
  return order;
}

std::vector<std::size_t> knn(std::span<const double> query, const Corpus& pool,
                             std::size_t k, DocDistance kind) {
  std::vector<double> d(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    d[i] = doc_distance(kind, query, pool.vector(i));
  }
  return k_smallest(d, k);
}

std::vector<std::size_t> knn(std::size_t query_index, const Corpus& pool,
                             std::size_t k, bool exclude_self,
                             DocDistance kind) {
  if (query_index >= pool.size()) {
    throw std::out_of_range("knn: query index outside the pool");
  }
  std::vector<double> d(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    d[i] = i == query_index
               ? 0.0
               : doc_distance(kind, pool.vector(query_index), pool.vector(i));
  }
  return k_smallest(d, k,
                    exclude_self ? std::optional<std::size_t>(query_index)
                                 : std::nullopt);
}

}  // namespace corpdist
