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

// The `corpdist` command line: metrics, simulate, ksc, classify.
//
// Exit codes: 0 success, 1 internal error, 2 input or validation error.

#ifndef CORPDIST_COMMANDS_HPP_
#define CORPDIST_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpdist/distributionality.hpp"
#include "corpdist/ksc.hpp"
#include "corpdist/metrics.hpp"
#include "corpdist/synth.hpp"

namespace corpdist {

inline constexpr std::string_view kSeedEnv = "CORPDIST_SEED";

/// Expands metric names against a k list: "PR" and "DC" become one metric per
/// k, "PR_5"-style tokens are taken as is, other names pass through.
std::vector<MetricId> expand_metrics(const std::vector<std::string>& names,
                                     const std::vector<std::size_t>& ks);

/// Reorders B so that b_i carries the pair_id of a_i. Throws InputError when
/// sizes differ, a pair_id is missing or duplicated, or a partner is absent.
std::pair<Corpus, Corpus> align_pairs(const Corpus& a, const Corpus& b);

struct MetricsConfig {
  std::string a_path;
  std::string b_path;
  std::vector<MetricId> metrics;
  DocDistance distance = DocDistance::kCosine;
};

struct SimulateConfig {
  SweepConfig sweep;
  std::string svg_path;  // empty: no plot
};

struct KscConfig {
  std::string a_path;  // both empty: synthetic proxy
  std::string b_path;
  MixtureSpec proxy{.m = 50};
  double proxy_sigma = 0.1;
  KscDesign design;
  std::vector<MetricId> metrics;
  DocDistance distance = DocDistance::kCosine;
  std::string svg_path;

  bool synthetic() const { return a_path.empty() && b_path.empty(); }
};

struct ClassifyConfig {
  std::string input_path;
  GridSpec grid;
};

void cmd_metrics(const MetricsConfig& config, std::ostream& out);
void cmd_simulate(const SimulateConfig& config, std::ostream& out);
void cmd_ksc(const KscConfig& config, std::ostream& out);
void cmd_classify(const ClassifyConfig& config, std::ostream& out);

/// Synthetic paired corpora used by `ksc` when no files are given.
PairedSample ksc_proxy_sample(const KscConfig& config);

/// Parses `args` (without the program name), runs the subcommand and returns
/// the exit code. Diagnostics go to `err`; CSV goes to `out` unless -o is set.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace corpdist

#endif  // CORPDIST_COMMANDS_HPP_
