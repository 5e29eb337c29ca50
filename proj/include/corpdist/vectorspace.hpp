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

// Embedded documents, corpora, document-level distances and exact k-NN.

#ifndef CORPDIST_VECTORSPACE_HPP_
#define CORPDIST_VECTORSPACE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace corpdist {

using Vector = std::vector<double>;

struct EmbeddedDoc {
  std::string id;
  std::optional<std::string> pair_id;
  Vector vector;
};

/// Nonempty ordered collection of documents sharing one dimension.
///
/// The constructor enforces the invariants (shared dimension, finite
/// coordinates, unique ids) and throws std::invalid_argument otherwise, so a
/// Corpus that exists is always valid.
class Corpus {
 public:
  explicit Corpus(std::vector<EmbeddedDoc> docs);

  std::size_t size() const { return docs_.size(); }
  std::size_t dim() const { return dim_; }

  const EmbeddedDoc& operator[](std::size_t i) const { return docs_[i]; }
  std::span<const double> vector(std::size_t i) const {
    return docs_[i].vector;
  }
  const std::vector<EmbeddedDoc>& docs() const { return docs_; }

  auto begin() const { return docs_.begin(); }
  auto end() const { return docs_.end(); }

 private:
  std::vector<EmbeddedDoc> docs_;
  std::size_t dim_ = 0;
};

/// Document-level distance used underneath every corpus metric.
enum class DocDistance { kCosine, kEuclidean };

std::string_view to_string(DocDistance distance);
/// Accepts "cosine" or "euclidean"; throws std::invalid_argument otherwise.
DocDistance parse_doc_distance(std::string_view name);

/// 1 - cos(u, v), in [0, 2]. Throws on a zero-norm input or size mismatch.
double cosine_distance(std::span<const double> u, std::span<const double> v);
double euclidean_distance(std::span<const double> u,
                          std::span<const double> v);
double doc_distance(DocDistance kind, std::span<const double> u,
                    std::span<const double> v);

/// Dense row-major matrix of document distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  DistanceMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// D(i, j) = delta(x_i, y_j).
DistanceMatrix cross_distances(const Corpus& x, const Corpus& y,
                               DocDistance kind);
/// Symmetric within-corpus matrix with an exactly zero diagonal.
DistanceMatrix self_distances(const Corpus& x, DocDistance kind);

/// Indices of the k smallest entries of `distances`, ordered by
/// (distance, index). `exclude` removes one index from consideration.
std::vector<std::size_t> k_smallest(std::span<const double> distances,
                                    std::size_t k,
                                    std::optional<std::size_t> exclude = {});

/// k nearest documents of `pool` to an arbitrary query vector.
std::vector<std::size_t> knn(std::span<const double> query, const Corpus& pool,
                             std::size_t k, DocDistance kind);

/// k nearest documents of `pool` to pool[query_index]; with `exclude_self`
/// the query document itself is not a candidate.
std::vector<std::size_t> knn(std::size_t query_index, const Corpus& pool,
                             std::size_t k, bool exclude_self,
                             DocDistance kind);

}  // namespace corpdist

#endif  // CORPDIST_VECTORSPACE_HPP_
