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

// Known-Similarity Corpora: K+1 corpora interpolating from source A to
// source B, and the table of corpus distances between l-separated members.

#ifndef CORPDIST_KSC_HPP_
#define CORPDIST_KSC_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "corpdist/metrics.hpp"
#include "corpdist/vectorspace.hpp"

namespace corpdist {

enum class Source { kA, kB };

/// Where a KSC document came from.
struct Provenance {
  Source source;
  std::size_t index;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Corpora c_0..c_K. Corpus i holds b_count(n, i, K) documents of B and the
/// rest from A, each side drawn without replacement. Documents are stored A
/// part first, each part in ascending source order, with ids prefixed
/// "A:"/"B:" so the two sources never collide.
struct KscSet {
  std::vector<Corpus> corpora;
  std::vector<std::vector<Provenance>> provenance;
  std::size_t separations = 0;  // K
  std::size_t corpus_size = 0;  // n
  std::uint64_t seed = 0;
};

/// round(n * i / K) with halves rounded up, in exact integer arithmetic.
std::size_t b_count(std::size_t n, std::size_t i, std::size_t separations);

/// Double-lottery construction. Child seeds are derive_seed(seed, {i, side})
/// with side 0 for the A draw and 1 for the B draw of corpus i.
/// Requires |A| = |B| = n >= K + 1 and K >= 1.
KscSet build_ksc(const Corpus& a, const Corpus& b, std::size_t separations,
                 std::uint64_t seed);

struct CorpusPairIndex {
  std::size_t i;
  std::size_t j;

  friend bool operator==(const CorpusPairIndex&,
                         const CorpusPairIndex&) = default;
};

/// All (i, i + ell) with ascending i; there are K + 1 - ell of them.
std::vector<CorpusPairIndex> ell_pairs(const KscSet& ksc, std::size_t ell);
std::vector<CorpusPairIndex> ell_pairs(std::size_t separations,
                                       std::size_t ell);

/// One corpus distance d(c_i, c_j) from repetition `rep` (1-based).
struct DistanceRecord {
  MetricId metric;
  std::size_t ell = 0;
  std::size_t rep = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;
};

struct KscDesign {
  std::size_t separations = 15;  // K
  std::size_t repetitions = 5;   // R
  std::uint64_t seed = 0;
};

/// Seed of the KscSet used for repetition `rep`.
std::uint64_t repetition_seed(std::uint64_t master, std::size_t rep);

/// Builds R independent KSC sets and scores every l-separated pair with every
/// metric. Records are ordered by (metric position in `metrics`, rep, ell, i).
std::vector<DistanceRecord> distance_table(const Corpus& a, const Corpus& b,
                                           const KscDesign& design,
                                           std::span<const MetricId> metrics,
                                           DocDistance kind);

}  // namespace corpdist

#endif  // CORPDIST_KSC_HPP_
