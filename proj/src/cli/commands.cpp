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

#include "corpdist/commands.hpp"

#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "CLI11.hpp"
#include "corpdist/io.hpp"
#include "corpdist/svg.hpp"
#include "json.hpp"

#ifndef CORPDIST_VERSION
#define CORPDIST_VERSION "dev"
#endif

namespace corpdist {
namespace {

using nlohmann::json;

constexpr std::uint64_t kProxyStream = 0x50524F5859;  // "PROXY"

const std::vector<std::string> kDefaultMetrics = {"ENERGY", "AHD", "IRPR",
                                                  "FID",    "PR",  "DC"};
const std::vector<std::size_t> kDefaultKs = {2, 5, 15};

// JSON object -> CLI11 config items for the subcommand being run. CLI11 only
// reads config files on the root app, so items are re-parented here.
// Arrays become multiple inputs.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* app) : app_(app) {}

  std::string to_config(const CLI::App*, bool, bool,
                        std::string) const override {
    return {};
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json root;
    try {
      root = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config file: ") + e.what());
    }
    if (!root.is_object()) {
      throw CLI::ConversionError("config file must hold a JSON object");
    }
    std::vector<std::string> parents;
    for (const CLI::App* sub : app_->get_subcommands()) {
      parents.push_back(sub->get_name());
    }
    std::vector<CLI::ConfigItem> items;
    collect(root, parents, items);
    return items;
  }

 private:
  const CLI::App* app_;

  static std::string scalar(const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  }

  static void collect(const json& obj, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        throw CLI::ConversionError("config file: nested object under \"" + key +
                                   "\" is not supported");
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

std::string metadata_line(std::string_view command,
                          std::optional<std::uint64_t> seed,
                          const json& config) {
  std::string line = " corpdist " CORPDIST_VERSION " " + std::string(command);
  line += " seed=" + (seed ? std::to_string(*seed) : std::string("none"));
  line += " config=" + config.dump();
  return line;
}

json metric_names(const std::vector<MetricId>& metrics) {
  json names = json::array();
  for (const auto& m : metrics) names.push_back(m.display_name());
  return names;
}

json mixture_json(const MixtureSpec& m) {
  return {{"q", m.q},         {"components", m.n_components},
          {"kappa", m.kappa}, {"box", {m.box_lo, m.box_hi}},
          {"m", m.m}};
}

std::string ell_label(std::size_t ell) { return std::to_string(ell); }

std::vector<BoxPanel> ksc_panels(const std::vector<DistanceRecord>& records,
                                 const std::vector<MetricId>& metrics,
                                 std::size_t separations) {
  std::vector<BoxPanel> panels;
  for (const auto& metric : metrics) {
    BoxPanel panel;
    panel.title = metric.display_name();
    panel.x_label = "separation l";
    panel.groups.assign(separations, {});
    for (std::size_t ell = 1; ell <= separations; ++ell) {
      panel.labels.push_back(ell_label(ell));
    }
    for (const auto& r : records) {
      if (r.metric == metric) panel.groups[r.ell - 1].push_back(r.value);
    }
    panels.push_back(std::move(panel));
  }
  return panels;
}

std::vector<BoxPanel> sweep_panels(const std::vector<SweepRecord>& records,
                                   const SweepConfig& config) {
  const Grid& grid = config.grids.front();
  std::vector<BoxPanel> panels;
  for (const auto& metric : config.metrics) {
    BoxPanel panel;
    panel.title = metric.display_name();
    panel.x_label = std::string(to_string(grid.axis));
    panel.groups.assign(grid.values.size(), {});
    for (double v : grid.values) panel.labels.push_back(format_real(v));
    for (const auto& r : records) {
      if (!(r.metric == metric)) continue;
      for (std::size_t g = 0; g < grid.values.size(); ++g) {
        if (grid.values[g] == r.grid_value) panel.groups[g].push_back(r.value);
      }
    }
    panels.push_back(std::move(panel));
  }
  return panels;
}

void write_svg_file(const std::string& path,
                    const std::vector<BoxPanel>& panels) {
  std::ofstream svg(path);
  if (!svg) throw InputError("cannot write " + path);
  write_boxplot_svg(svg, panels);
}

std::vector<MetricId> builtin_only(std::vector<MetricId> metrics) {
  for (const auto& m : metrics) {
    if (m.kind == MetricKind::kExternal) {
      throw InputError("unknown metric '" + m.display_name() +
                       "' (built-in: ENERGY, AHD, IRPR, FID, PR_k, DC_k)");
    }
  }
  return metrics;
}

}  // namespace

std::vector<MetricId> expand_metrics(const std::vector<std::string>& names,
                                     const std::vector<std::size_t>& ks) {
  std::vector<MetricId> out;
  for (const auto& name : names) {
    MetricId id;
    try {
      id = parse_metric_token(name);
    } catch (const std::invalid_argument& e) {
      // Bare PR / DC: one metric per k.
      const MetricId probe = parse_metric(name, std::size_t{1});
      if (probe.kind != MetricKind::kPr && probe.kind != MetricKind::kDc) {
        throw InputError(e.what());
      }
      if (ks.empty()) throw InputError(name + " needs at least one k");
      for (std::size_t k : ks) {
        out.push_back(probe.kind == MetricKind::kPr ? MetricId::pr(k)
                                                    : MetricId::dc(k));
      }
      continue;
    }
    out.push_back(std::move(id));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (out[i] == out[j]) {
        throw InputError("metric " + out[i].display_name() + " listed twice");
      }
    }
  }
  return out;
}

std::pair<Corpus, Corpus> align_pairs(const Corpus& a, const Corpus& b) {
  if (a.size() != b.size()) {
    throw InputError("paired sources must have equal size (" +
                     std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  std::unordered_map<std::string, std::size_t> b_index;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!b[i].pair_id) {
      throw InputError("document '" + b[i].id + "' in B has no pair_id");
    }
    if (!b_index.emplace(*b[i].pair_id, i).second) {
      throw InputError("pair_id '" + *b[i].pair_id + "' repeated in B");
    }
  }
  std::vector<EmbeddedDoc> ordered;
  ordered.reserve(b.size());
  std::unordered_map<std::string, bool> seen;
  for (const auto& doc : a) {
    if (!doc.pair_id) {
      throw InputError("document '" + doc.id + "' in A has no pair_id");
    }
    if (seen[*doc.pair_id]) {
      throw InputError("pair_id '" + *doc.pair_id + "' repeated in A");
    }
    seen[*doc.pair_id] = true;
    const auto it = b_index.find(*doc.pair_id);
    if (it == b_index.end()) {
      throw InputError("pair_id '" + *doc.pair_id + "' has no partner in B");
    }
    ordered.push_back(b[it->second]);
  }
  return {a, Corpus(std::move(ordered))};
}

void cmd_metrics(const MetricsConfig& config, std::ostream& out) {
  const Corpus a = read_embeddings_file(config.a_path);
  const Corpus b = read_embeddings_file(config.b_path);
  if (a.dim() != b.dim()) {
    throw InputError("dimension mismatch: " + config.a_path + " has " +
                     std::to_string(a.dim()) + ", " + config.b_path + " has " +
                     std::to_string(b.dim()));
  }
  const auto metrics = builtin_only(config.metrics);
  const PairDistances tables(a, b, config.distance);
  std::vector<std::pair<MetricId, double>> values;
  for (const auto& m : metrics) {
    try {
      values.emplace_back(m, evaluate(m, tables));
    } catch (const std::invalid_argument& e) {
      throw InputError(m.display_name() + ": " + e.what());
    }
  }
  const json echo = {{"a", config.a_path},
                     {"b", config.b_path},
                     {"metrics", metric_names(metrics)},
                     {"distance", std::string(to_string(config.distance))}};
  write_pair_distances(out, metadata_line("metrics", std::nullopt, echo),
                       values);
}

void cmd_simulate(const SimulateConfig& config, std::ostream& out) {
  const SweepConfig& s = config.sweep;
  builtin_only(s.metrics);
  const auto records = sweep(s);
  json grids = json::object();
  for (const auto& g : s.grids) grids[std::string(to_string(g.axis))] = g.values;
  const json echo = {{"mixture", mixture_json(s.mixture)},
                     {"sigma", s.sigma},
                     {"p", s.p},
                     {"delta", s.delta},
                     {"direction", std::string(to_string(s.direction))},
                     {"grid", grids},
                     {"reps", s.repetitions},
                     {"metrics", metric_names(s.metrics)},
                     {"distance", std::string(to_string(s.distance))}};
  write_sweep(out, metadata_line("simulate", s.seed, echo), records);
  if (!config.svg_path.empty()) {
    write_svg_file(config.svg_path, sweep_panels(records, s));
  }
}

PairedSample ksc_proxy_sample(const KscConfig& config) {
  return gen_paired_sample(config.proxy, config.proxy_sigma,
                           derive_seed(config.design.seed, {kProxyStream}));
}

void cmd_ksc(const KscConfig& config, std::ostream& out) {
  const auto metrics = builtin_only(config.metrics);
  json echo = {{"K", config.design.separations},
               {"R", config.design.repetitions},
               {"metrics", metric_names(metrics)},
               {"distance", std::string(to_string(config.distance))}};
  std::vector<DistanceRecord> records;
  if (config.synthetic()) {
    const PairedSample sample = ksc_proxy_sample(config);
    echo["source"] = "synthetic";
    echo["proxy"] = mixture_json(config.proxy);
    echo["proxy"]["sigma"] = config.proxy_sigma;
    records = distance_table(sample.a, sample.b, config.design, metrics,
                             config.distance);
  } else {
    if (config.a_path.empty() || config.b_path.empty()) {
      throw InputError("ksc needs both --a and --b (or neither for the proxy)");
    }
    const Corpus a = read_embeddings_file(config.a_path);
    const Corpus b = read_embeddings_file(config.b_path);
    if (a.dim() != b.dim()) throw InputError("sources differ in dimension");
    auto [pa, pb] = align_pairs(a, b);
    echo["source"] = {config.a_path, config.b_path};
    records = distance_table(pa, pb, config.design, metrics, config.distance);
  }
  write_distances(out, metadata_line("ksc", config.design.seed, echo), records);
  if (!config.svg_path.empty()) {
    write_svg_file(config.svg_path,
                   ksc_panels(records, metrics, config.design.separations));
  }
}

void cmd_classify(const ClassifyConfig& config, std::ostream& out) {
  const DistancesFile input = read_distances_file(config.input_path);
  if (input.records.empty()) {
    throw InputError(config.input_path + ": no distance rows");
  }
  Classification result;
  try {
    result = classify_records(input.records, config.grid);
  } catch (const std::invalid_argument& e) {
    throw InputError(config.input_path + ": " + e.what());
  }

  // Carry the seed of the run that produced the distances.
  std::optional<std::uint64_t> seed;
  for (const auto& line : input.metadata) {
    const auto pos = line.find(" seed=");
    if (pos == std::string::npos) continue;
    std::istringstream in(line.substr(pos + 6));
    std::uint64_t s;
    if (in >> s) seed = s;
    break;
  }
  const json echo = {
      {"input", config.input_path},
      {"kernel", "gaussian"},
      {"bandwidth", "silverman: 0.9*min(sd, IQR/1.34)*n^(-1/5), floor 0.001"},
      {"grid", {{"a", config.grid.a}, {"b", config.grid.b}, {"c", config.grid.c}}},
      {"standardization", "pooled mean, population sd"},
      {"degenerate", metric_names(result.degenerate)},
      {"input_metadata", input.metadata}};
  write_report(out, metadata_line("classify", seed, echo), result.reports);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"corpdist: corpus distance metrics, KSC experiments and "
               "distributionality classification",
               "corpdist"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CORPDIST_VERSION);
  const std::string seed_help =
      "Master seed (default from $" + std::string(kSeedEnv) + ", else 0)";
  app.set_config("--config", "", "JSON config file; flags override it");
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::string output;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "Write CSV here instead of stdout");
    sub->fallthrough();
  };
  std::vector<std::string> metric_list = kDefaultMetrics;
  std::vector<std::size_t> k_list = kDefaultKs;
  auto add_metric_options = [&](CLI::App* sub) {
    sub->add_option("--metrics", metric_list,
                    "Metrics: ENERGY AHD IRPR FID PR DC (PR/DC expand over --k) "
                    "or PR_5-style names")
        ->delimiter(',')
        ->capture_default_str();
    sub->add_option("--k", k_list, "Neighborhood sizes for PR and DC")
        ->delimiter(',')
        ->capture_default_str();
  };
  std::uint64_t seed = 0;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, seed_help)->envname(std::string(kSeedEnv));
  };

  // metrics
  MetricsConfig metrics_cfg;
  std::string metrics_distance = "cosine";
  CLI::App* metrics_cmd =
      app.add_subcommand("metrics", "Distances between two embedding files");
  add_common(metrics_cmd);
  add_metric_options(metrics_cmd);
  metrics_cmd->add_option("a", metrics_cfg.a_path, "Corpus A (JSONL)")
      ->required();
  metrics_cmd->add_option("b", metrics_cfg.b_path, "Corpus B (JSONL)")
      ->required();
  metrics_cmd
      ->add_option("--distance", metrics_distance, "Document distance")
      ->check(CLI::IsMember({"cosine", "euclidean"}))
      ->capture_default_str();

  // simulate
  SimulateConfig sim_cfg;
  SweepConfig& sw = sim_cfg.sweep;
  std::string sim_distance = "euclidean";
  std::string direction = "away";
  std::vector<double> p_grid, delta_grid, q_grid;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Perturbation sweep on a synthetic paired sample");
  add_common(sim_cmd);
  add_metric_options(sim_cmd);
  add_seed(sim_cmd);
  sim_cmd->add_option("--m", sw.mixture.m, "Sample size")->capture_default_str();
  sim_cmd->add_option("--q", sw.mixture.q, "Dimension")->capture_default_str();
  sim_cmd->add_option("--components", sw.mixture.n_components,
                      "Mixture components")
      ->capture_default_str();
  sim_cmd->add_option("--kappa", sw.mixture.kappa, "Component std-dev")
      ->capture_default_str();
  sim_cmd->add_option("--box-lo", sw.mixture.box_lo, "Centroid box lower bound")
      ->capture_default_str();
  sim_cmd->add_option("--box-hi", sw.mixture.box_hi, "Centroid box upper bound")
      ->capture_default_str();
  sim_cmd->add_option("--sigma", sw.sigma, "Pair jitter std-dev")
      ->capture_default_str();
  sim_cmd->add_option("--p", sw.p, "Fixed perturbed proportion")
      ->capture_default_str();
  sim_cmd->add_option("--delta", sw.delta, "Fixed shift distance")
      ->capture_default_str();
  sim_cmd->add_option("--direction", direction, "Shift direction")
      ->check(CLI::IsMember({"away", "random"}))
      ->capture_default_str();
  sim_cmd->add_option("--p-grid", p_grid, "Sweep over p")->delimiter(',');
  sim_cmd->add_option("--delta-grid", delta_grid,
                      "Sweep over delta (default 0,0.5,1,2,3,5)")
      ->delimiter(',');
  sim_cmd->add_option("--q-grid", q_grid, "Sweep over q")->delimiter(',');
  sim_cmd->add_option("-r,--reps", sw.repetitions, "Perturbations per grid value")
      ->capture_default_str();
  sim_cmd->add_option("--distance", sim_distance, "Document distance")
      ->check(CLI::IsMember({"cosine", "euclidean"}))
      ->capture_default_str();
  sim_cmd->add_option("--svg", sim_cfg.svg_path, "Also write boxplots here");

  // ksc
  KscConfig ksc_cfg;
  std::string ksc_distance;
  bool synthetic_flag = false;
  CLI::App* ksc_cmd = app.add_subcommand(
      "ksc", "Known-Similarity Corpora distance table");
  add_common(ksc_cmd);
  add_metric_options(ksc_cmd);
  add_seed(ksc_cmd);
  ksc_cmd->add_option("--a", ksc_cfg.a_path, "Source A (JSONL, with pair_id)");
  ksc_cmd->add_option("--b", ksc_cfg.b_path, "Source B (JSONL, with pair_id)");
  ksc_cmd->add_flag("--synthetic", synthetic_flag,
                    "Use the synthetic paraphrase proxy (default without files)");
  ksc_cmd->add_option("--K", ksc_cfg.design.separations, "Separations K")
      ->capture_default_str();
  ksc_cmd->add_option("--R", ksc_cfg.design.repetitions, "Repetitions R")
      ->capture_default_str();
  ksc_cmd->add_option("--n", ksc_cfg.proxy.m, "Proxy corpus size")
      ->capture_default_str();
  ksc_cmd->add_option("--q", ksc_cfg.proxy.q, "Proxy dimension")
      ->capture_default_str();
  ksc_cmd->add_option("--components", ksc_cfg.proxy.n_components,
                      "Proxy mixture components")
      ->capture_default_str();
  ksc_cmd->add_option("--kappa", ksc_cfg.proxy.kappa, "Proxy component std-dev")
      ->capture_default_str();
  ksc_cmd->add_option("--sigma", ksc_cfg.proxy_sigma, "Proxy pair jitter")
      ->capture_default_str();
  ksc_cmd
      ->add_option("--distance", ksc_distance,
                   "Document distance (default cosine for files, euclidean "
                   "for the proxy)")
      ->check(CLI::IsMember({"cosine", "euclidean"}));
  ksc_cmd->add_option("--svg", ksc_cfg.svg_path, "Also write boxplots here");

  // classify
  ClassifyConfig cls_cfg;
  CLI::App* cls_cmd = app.add_subcommand(
      "classify", "Label metrics DISTRIBUTIONAL / NON_DISTRIBUTIONAL");
  add_common(cls_cmd);
  cls_cmd->add_option("input", cls_cfg.input_path, "Distances CSV")->required();
  cls_cmd->add_option("--grid-a", cls_cfg.grid.a, "Density grid start")
      ->capture_default_str();
  cls_cmd->add_option("--grid-b", cls_cfg.grid.b, "Density grid end")
      ->capture_default_str();
  cls_cmd->add_option("--grid-c", cls_cfg.grid.c, "Density grid intervals")
      ->capture_default_str();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << CORPDIST_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "corpdist: " << e.what() << '\n';
    return 2;
  }

  std::ostringstream buffer;
  try {
    if (*metrics_cmd) {
      metrics_cfg.metrics = expand_metrics(metric_list, k_list);
      metrics_cfg.distance = parse_doc_distance(metrics_distance);
      cmd_metrics(metrics_cfg, buffer);
    } else if (*sim_cmd) {
      sw.metrics = expand_metrics(metric_list, k_list);
      sw.distance = parse_doc_distance(sim_distance);
      sw.direction = parse_shift_direction(direction);
      sw.seed = seed;
      if (!p_grid.empty()) sw.grids.push_back({GridAxis::kProportion, p_grid});
      if (!delta_grid.empty()) sw.grids.push_back({GridAxis::kShift, delta_grid});
      if (!q_grid.empty()) sw.grids.push_back({GridAxis::kDimension, q_grid});
      if (sw.grids.empty()) {
        sw.grids.push_back({GridAxis::kShift, {0.0, 0.5, 1.0, 2.0, 3.0, 5.0}});
      }
      if (sw.grids.size() > 1) {
        throw InputError(
            "give exactly one of --p-grid, --delta-grid, --q-grid");
      }
      cmd_simulate(sim_cfg, buffer);
    } else if (*ksc_cmd) {
      if (synthetic_flag && (!ksc_cfg.a_path.empty() || !ksc_cfg.b_path.empty())) {
        throw InputError("--synthetic cannot be combined with --a/--b");
      }
      ksc_cfg.metrics = expand_metrics(metric_list, k_list);
      ksc_cfg.design.seed = seed;
      ksc_cfg.distance = parse_doc_distance(
          !ksc_distance.empty() ? ksc_distance
                                : (ksc_cfg.synthetic() ? "euclidean" : "cosine"));
      cmd_ksc(ksc_cfg, buffer);
    } else if (*cls_cmd) {
      cmd_classify(cls_cfg, buffer);
    }
  } catch (const InputError& e) {
    err << "corpdist: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "corpdist: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "corpdist: internal error: " << e.what() << '\n';
    return 1;
  }

  if (output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file || !(file << buffer.str()) || !file.flush()) {
      err << "corpdist: cannot write " << output << '\n';
      return 2;
    }
  }
  return 0;
}

}  // namespace corpdist
