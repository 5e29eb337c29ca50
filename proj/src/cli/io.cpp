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

#include "corpdist/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace corpdist {
namespace {

using nlohmann::json;

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line) + ": ";
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string k_field(const MetricId& m) {
  return m.k ? std::to_string(*m.k) : std::string();
}

void write_metadata(std::ostream& out, std::string_view metadata) {
  out << '#' << metadata << '\n';
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Corpus read_embeddings(std::istream& in, std::string_view source) {
  std::vector<EmbeddedDoc> docs;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      // Includes out-of-range numbers such as 1e999.
      throw InputError(where(source, line_no) + "invalid JSON: " + e.what());
    }
    if (!obj.is_object()) {
      throw InputError(where(source, line_no) + "expected a JSON object");
    }
    EmbeddedDoc doc;
    const auto id = obj.find("id");
    if (id == obj.end() || !id->is_string()) {
      throw InputError(where(source, line_no) + "missing string field \"id\"");
    }
    doc.id = id->get<std::string>();
    if (const auto pid = obj.find("pair_id"); pid != obj.end() && !pid->is_null()) {
      if (!pid->is_string()) {
        throw InputError(where(source, line_no) +
                         "\"pair_id\" must be a string or null");
      }
      doc.pair_id = pid->get<std::string>();
    }
    const auto vec = obj.find("vector");
    if (vec == obj.end() || !vec->is_array() || vec->empty()) {
      throw InputError(where(source, line_no) +
                       "missing nonempty array field \"vector\"");
    }
    doc.vector.reserve(vec->size());
    for (const auto& x : *vec) {
      if (!x.is_number()) {
        throw InputError(where(source, line_no) +
                         "vector components must be numbers");
      }
      const double v = x.get<double>();
      if (!std::isfinite(v)) {
        throw InputError(where(source, line_no) +
                         "vector has a non-finite component");
      }
      doc.vector.push_back(v);
    }
    if (docs.empty()) {
      dim = doc.vector.size();
    } else if (doc.vector.size() != dim) {
      throw InputError(where(source, line_no) + "vector has dimension " +
                       std::to_string(doc.vector.size()) + ", expected " +
                       std::to_string(dim));
    }
    docs.push_back(std::move(doc));
  }
  if (docs.empty()) throw InputError(std::string(source) + ": no documents");
  try {
    return Corpus(std::move(docs));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(source) + ": " + e.what());
  }
}

Corpus read_embeddings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_embeddings(in, path);
}

void write_embeddings(std::ostream& out, const Corpus& corpus) {
  for (const auto& doc : corpus) {
    out << "{\"id\": " << json(doc.id).dump() << ", \"pair_id\": "
        << (doc.pair_id ? json(*doc.pair_id).dump() : "null")
        << ", \"vector\": [";
    for (std::size_t i = 0; i < doc.vector.size(); ++i) {
      out << (i ? ", " : "") << format_real(doc.vector[i]);
    }
    out << "]}\n";
  }
}

void write_distances(std::ostream& out, std::string_view metadata,
                     std::span<const DistanceRecord> records) {
  write_metadata(out, metadata);
  out << kDistancesHeader << '\n';
  for (const auto& r : records) {
    out << r.metric.name() << ',' << k_field(r.metric) << ',' << r.ell << ','
        << r.rep << ',' << r.i << ',' << r.j << ',' << format_real(r.value)
        << '\n';
  }
}

void write_pair_distances(
    std::ostream& out, std::string_view metadata,
    std::span<const std::pair<MetricId, double>> values) {
  write_metadata(out, metadata);
  out << kDistancesHeader << '\n';
  for (const auto& [metric, value] : values) {
    out << metric.name() << ',' << k_field(metric) << ",,,,,"
        << format_real(value) << '\n';
  }
}

void write_sweep(std::ostream& out, std::string_view metadata,
                 std::span<const SweepRecord> records) {
  write_metadata(out, metadata);
  out << kSweepHeader << '\n';
  for (const auto& r : records) {
    out << r.metric.name() << ',' << k_field(r.metric) << ','
        << to_string(r.axis) << ',' << format_real(r.grid_value) << ','
        << r.rep << ',' << format_real(r.value) << '\n';
  }
}

void write_report(std::ostream& out, std::string_view metadata,
                  std::span<const DeviationReport> reports) {
  write_metadata(out, metadata);
  out << kReportHeader << '\n';
  for (const auto& r : reports) {
    out << r.metric.name() << ',' << k_field(r.metric) << ','
        << format_real(r.i_energy) << ',' << format_real(r.i_ahd) << ','
        << to_string(r.label) << '\n';
  }
}

DistancesFile read_distances(std::istream& in, std::string_view source) {
  DistancesFile file;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      file.metadata.push_back(line.substr(1));
      continue;
    }
    if (!header_seen) {
      if (line != kDistancesHeader) {
        throw InputError(where(source, line_no) + "expected header '" +
                         std::string(kDistancesHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 7) {
      throw InputError(where(source, line_no) + "expected 7 fields, found " +
                       std::to_string(f.size()));
    }
    if (f[0].empty()) throw InputError(where(source, line_no) + "empty metric");
    std::optional<std::size_t> k;
    if (!f[1].empty()) {
      k = parse_number<std::size_t>(f[1]);
      if (!k || *k == 0) {
        throw InputError(where(source, line_no) + "invalid k '" +
                         std::string(f[1]) + "'");
      }
    }
    DistanceRecord r;
    try {
      r.metric = parse_metric(f[0], k);
    } catch (const std::invalid_argument& e) {
      throw InputError(where(source, line_no) + e.what());
    }
    std::size_t* targets[] = {&r.ell, &r.rep, &r.i, &r.j};
    const char* names[] = {"ell", "rep", "i", "j"};
    for (int c = 0; c < 4; ++c) {
      const auto v = parse_number<std::size_t>(f[2 + c]);
      if (!v) {
        throw InputError(where(source, line_no) + "invalid " + names[c] +
                         " '" + std::string(f[2 + c]) + "'");
      }
      *targets[c] = *v;
    }
    const auto value = parse_number<double>(f[6]);
    if (!value || !std::isfinite(*value)) {
      throw InputError(where(source, line_no) + "invalid value '" +
                       std::string(f[6]) + "'");
    }
    r.value = *value;
    if (r.ell == 0 || r.j < r.i || r.j - r.i != r.ell) {
      throw InputError(where(source, line_no) +
                       "inconsistent separation: j - i must equal ell >= 1");
    }
    file.records.push_back(std::move(r));
  }
  if (!header_seen) throw InputError(std::string(source) + ": missing header");
  return file;
}

DistancesFile read_distances_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_distances(in, path);
}

}  // namespace corpdist
