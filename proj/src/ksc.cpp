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

#include "corpdist/ksc.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

#include "corpdist/random.hpp"

namespace corpdist {
namespace {

constexpr std::uint64_t kKscStream = 0x4B5343;  // "KSC"

void append_draw(const Corpus& source, Source tag, std::vector<std::size_t> picks,
                 std::vector<EmbeddedDoc>& docs,
                 std::vector<Provenance>& provenance) {
  std::sort(picks.begin(), picks.end());
  const std::string prefix = tag == Source::kA ? "A:" : "B:";
  for (std::size_t idx : picks) {
    EmbeddedDoc doc = source[idx];
    doc.id = prefix + doc.id;
    docs.push_back(std::move(doc));
    provenance.push_back({tag, idx});
  }
}

}  // namespace

std::size_t b_count(std::size_t n, std::size_t i, std::size_t separations) {
  if (separations == 0) throw std::invalid_argument("K must be >= 1");
  // floor(n*i/K + 1/2) == floor((2*n*i + K) / (2*K))
  return (2 * n * i + separations) / (2 * separations);
}

KscSet build_ksc(const Corpus& a, const Corpus& b, std::size_t separations,
                 std::uint64_t seed) {
  if (separations < 1) throw std::invalid_argument("K must be >= 1");
  if (a.size() != b.size()) {
    throw std::invalid_argument("KSC sources must have equal size (|A| = " +
                                std::to_string(a.size()) + ", |B| = " +
                                std::to_string(b.size()) + ")");
  }
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("KSC sources have different dimensions");
  }
  const std::size_t n = a.size();
  if (n < separations + 1) {
    throw std::invalid_argument("KSC needs n >= K + 1 (n = " +
                                std::to_string(n) + ", K = " +
                                std::to_string(separations) + ")");
  }

  KscSet out;
  out.separations = separations;
  out.corpus_size = n;
  out.seed = seed;
  out.corpora.reserve(separations + 1);
  out.provenance.reserve(separations + 1);
  for (std::size_t i = 0; i <= separations; ++i) {
    const std::size_t from_b = b_count(n, i, separations);
    Rng rng_a(derive_seed(seed, {i, 0}));
    Rng rng_b(derive_seed(seed, {i, 1}));
    std::vector<EmbeddedDoc> docs;
    std::vector<Provenance> prov;
    docs.reserve(n);
    prov.reserve(n);
    append_draw(a, Source::kA, rng_a.sample_without_replacement(n, n - from_b),
                docs, prov);
    append_draw(b, Source::kB, rng_b.sample_without_replacement(n, from_b),
                docs, prov);
    out.corpora.emplace_back(std::move(docs));
    out.provenance.push_back(std::move(prov));
  }
  return out;
}

std::vector<CorpusPairIndex> ell_pairs(std::size_t separations,
                                       std::size_t ell) {
  if (ell < 1 || ell > separations) {
    throw std::invalid_argument("separation " + std::to_string(ell) +
                                " outside 1.." + std::to_string(separations));
  }
  std::vector<CorpusPairIndex> pairs;
  for (std::size_t i = 0; i + ell <= separations; ++i) {
    pairs.push_back({i, i + ell});
  }
  return pairs;
}

std::vector<CorpusPairIndex> ell_pairs(const KscSet& ksc, std::size_t ell) {
  return ell_pairs(ksc.separations, ell);
}

std::uint64_t repetition_seed(std::uint64_t master, std::size_t rep) {
  return derive_seed(master, {kKscStream, rep});
}

std::vector<DistanceRecord> distance_table(const Corpus& a, const Corpus& b,
                                           const KscDesign& design,
                                           std::span<const MetricId> metrics,
                                           DocDistance kind) {
  if (design.repetitions < 1) throw std::invalid_argument("R must be >= 1");
  if (metrics.empty()) throw std::invalid_argument("no metrics requested");
  bool needs_tables = false;
  for (const auto& m : metrics) {
    if (m.kind == MetricKind::kExternal) {
      throw std::invalid_argument("cannot compute external metric '" +
                                  m.display_name() + "'");
    }
    needs_tables = needs_tables || m.kind != MetricKind::kFid;
  }

  const std::size_t K = design.separations;
  const std::size_t pairs_per_rep = K * (K + 1) / 2;
  std::vector<DistanceRecord> records(metrics.size() * design.repetitions *
                                      pairs_per_rep);

  // Row-major index so the output order does not depend on evaluation order.
  auto slot = [&](std::size_t m, std::size_t rep, std::size_t ell,
                  std::size_t i) {
    // Pairs with separation < ell precede those with separation ell.
    const std::size_t before = (ell - 1) * (K + 1) - (ell - 1) * ell / 2;
    return (m * design.repetitions + (rep - 1)) * pairs_per_rep + before + i;
  };

  for (std::size_t rep = 1; rep <= design.repetitions; ++rep) {
    const KscSet ksc =
        build_ksc(a, b, K, repetition_seed(design.seed, rep));
    for (std::size_t ell = 1; ell <= K; ++ell) {
      for (const auto [i, j] : ell_pairs(ksc, ell)) {
        const Corpus& ci = ksc.corpora[i];
        const Corpus& cj = ksc.corpora[j];
        std::optional<PairDistances> tables;
        if (needs_tables) tables.emplace(ci, cj, kind);
        for (std::size_t m = 0; m < metrics.size(); ++m) {
          const double value = metrics[m].kind == MetricKind::kFid
                                   ? fid(ci, cj)
                                   : evaluate(metrics[m], *tables);
          records[slot(m, rep, ell, i)] = {metrics[m], ell, rep, i, j, value};
        }
      }
    }
  }
  return records;
}

}  // namespace corpdist
