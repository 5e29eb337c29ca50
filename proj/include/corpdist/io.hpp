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

// File formats: embedding JSON Lines in, tidy CSVs out.
//
// Embedding JSONL, one document per line:
//   {"id": "q1", "pair_id": "p1" | null, "vector": [0.1, -0.2, ...]}
//
// CSVs start with one '#' metadata line, then a header:
//   distances: metric,k,ell,rep,i,j,value
//   sweep:     metric,k,grid_axis,grid_value,rep,value
//   report:    metric,k,i_energy,i_ahd,label
// Reals are written with 17 significant digits.

#ifndef CORPDIST_IO_HPP_
#define CORPDIST_IO_HPP_

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpdist/distributionality.hpp"
#include "corpdist/ksc.hpp"
#include "corpdist/synth.hpp"
#include "corpdist/vectorspace.hpp"

namespace corpdist {

/// Malformed or invalid user input. The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kDistancesHeader =
    "metric,k,ell,rep,i,j,value";
inline constexpr std::string_view kSweepHeader =
    "metric,k,grid_axis,grid_value,rep,value";
inline constexpr std::string_view kReportHeader =
    "metric,k,i_energy,i_ahd,label";

/// "%.17g"; round-trips every double.
std::string format_real(double x);

/// Parses embedding JSONL. Errors name `source` and the 1-based line.
Corpus read_embeddings(std::istream& in, std::string_view source);
Corpus read_embeddings_file(const std::string& path);
void write_embeddings(std::ostream& out, const Corpus& corpus);

void write_distances(std::ostream& out, std::string_view metadata,
                     std::span<const DistanceRecord> records);
/// Single corpus pair: distances schema with ell, rep, i, j left empty.
void write_pair_distances(
    std::ostream& out, std::string_view metadata,
    std::span<const std::pair<MetricId, double>> values);
void write_sweep(std::ostream& out, std::string_view metadata,
                 std::span<const SweepRecord> records);
void write_report(std::ostream& out, std::string_view metadata,
                  std::span<const DeviationReport> reports);

/// A parsed distances CSV. `metadata` holds the '#' lines without the '#'.
struct DistancesFile {
  std::vector<std::string> metadata;
  std::vector<DistanceRecord> records;
};

/// Reads a distances CSV. Rows with an empty ell/rep/i/j (single-pair
/// output of `corpdist metrics`) are rejected since they carry no KSC design.
DistancesFile read_distances(std::istream& in, std::string_view source);
DistancesFile read_distances_file(const std::string& path);

}  // namespace corpdist

#endif  // CORPDIST_IO_HPP_
