// Copyright 2026 The graphclust Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "graphclust/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace graphclust {

namespace {

std::uint64_t pair_key(std::size_t i, std::size_t j, std::size_t n) {
  return static_cast<std::uint64_t>(i) * n + j;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view field) {
  field = trim(field);
  if (field.empty()) return std::nullopt;
  if (field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string line_error(std::size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

}  // namespace

NodeSpace::NodeSpace(std::size_t size) : size_(size) {
  if (size_ < 2) throw std::invalid_argument("node space needs at least 2 nodes");
}

NodeSpace::NodeSpace(std::vector<std::string> labels)
    : size_(labels.size()), labels_(std::move(labels)) {
  if (size_ < 2) throw std::invalid_argument("node space needs at least 2 nodes");
  index_.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw std::invalid_argument("duplicate node label '" + labels_[i] + "'");
    }
  }
}

std::string NodeSpace::label(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("node index out of range");
  return has_labels() ? labels_[i] : std::to_string(i);
}

std::optional<std::size_t> NodeSpace::find(std::string_view label) const {
  if (!has_labels()) {
    std::size_t value = 0;
    const auto* end = label.data() + label.size();
    const auto [ptr, ec] = std::from_chars(label.data(), end, value);
    if (ec != std::errc() || ptr != end || value >= size_) return std::nullopt;
    return value;
  }
  const auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EdgeDataset::EdgeDataset(std::shared_ptr<const NodeSpace> nodes,
                         std::vector<EdgeObservation> edges,
                         DatasetOptions options)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), options_(options) {
  if (!nodes_) throw std::invalid_argument("dataset requires a node space");
  const std::size_t n = nodes_->size();
  std::unordered_set<std::uint64_t> seen;
  if (!options_.with_replacement) seen.reserve(edges_.size() * 2);
  for (const auto& e : edges_) {
    if (e.i >= n || e.j >= n) throw DataError("edge endpoint out of range");
    if (!std::isfinite(e.w)) throw DataError("non-finite edge weight");
    if (options_.unit_weights && (e.w < 0.0 || e.w > 1.0)) {
      throw DataError("edge weight outside [0,1]");
    }
    if (e.i == e.j && !options_.allow_self_loops) {
      throw DataError("self-loop on node " + nodes_->label(e.i));
    }
    if (options_.with_replacement) continue;
    if (!seen.insert(pair_key(e.i, e.j, n)).second) {
      throw DataError("duplicate edge " + nodes_->label(e.i) + " -> " +
                      nodes_->label(e.j));
    }
    if (options_.symmetric && e.i != e.j &&
        seen.contains(pair_key(e.j, e.i, n))) {
      throw DataError("symmetric dataset stores both directions of " +
                      nodes_->label(e.i) + " -- " + nodes_->label(e.j));
    }
  }
}

double EdgeDataset::mean_weight() const {
  if (edges_.empty()) throw DataError("mean of an empty dataset");
  double sum = 0.0;
  for (const auto& e : edges_) sum += e.w;
  return sum / static_cast<double>(edges_.size());
}

double EdgeDataset::weight_variance() const {
  const double mean = mean_weight();
  double sum = 0.0;
  for (const auto& e : edges_) sum += (e.w - mean) * (e.w - mean);
  return sum / static_cast<double>(edges_.size());
}

EdgeDataset EdgeDataset::with_edges(std::vector<EdgeObservation> edges) const {
  return EdgeDataset(nodes_, std::move(edges), options_);
}

EdgeDataset parse_edge_list(std::istream& in, const ParseOptions& options) {
  std::vector<std::string> labels = options.node_labels;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (!index.emplace(labels[k], k).second) {
      throw DataError("duplicate predeclared node label '" + labels[k] + "'");
    }
  }
  auto lookup = [&](std::string_view label) {
    auto [it, inserted] = index.emplace(std::string(label), labels.size());
    if (inserted) labels.emplace_back(label);
    return it->second;
  };

  struct Raw {
    std::size_t i, j;
    double w;
    std::size_t line;
  };
  std::vector<Raw> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    const auto content = trim(view);
    if (content.empty() || content.front() == options.comment_prefix) continue;

    std::array<std::string_view, 3> fields;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const auto tab = view.find('\t', start);
      if (count < fields.size()) {
        fields[count] = view.substr(start, tab == std::string_view::npos
                                               ? std::string_view::npos
                                               : tab - start);
      }
      ++count;
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (count != 3) {
      throw DataError(line_error(line_no, "expected 3 tab-separated fields, got " +
                                              std::to_string(count)));
    }
    const auto src = trim(fields[0]);
    const auto dst = trim(fields[1]);
    if (src.empty() || dst.empty()) {
      throw DataError(line_error(line_no, "empty node identifier"));
    }
    const auto w = parse_double(fields[2]);
    if (!w) {
      throw DataError(line_error(line_no, "non-numeric weight '" +
                                              std::string(fields[2]) + "'"));
    }
    if (!std::isfinite(*w)) throw DataError(line_error(line_no, "non-finite weight"));
    if (options.unit_weights && (*w < 0.0 || *w > 1.0)) {
      throw DataError(line_error(line_no, "weight outside [0,1]"));
    }
    const std::size_t i = lookup(src);
    const std::size_t j = lookup(dst);
    if (i == j && !options.allow_self_loops) {
      throw DataError(line_error(line_no, "self-loop on '" + std::string(src) + "'"));
    }
    raw.push_back({i, j, *w, line_no});
  }

  if (raw.empty()) throw DataError("edge list contains no edges");
  if (labels.size() < 2) throw DataError("edge list spans fewer than 2 nodes");

  const std::size_t n = labels.size();
  std::unordered_map<std::uint64_t, std::size_t> stored;
  stored.reserve(raw.size() * 2);
  std::vector<EdgeObservation> edges;
  edges.reserve(raw.size());
  for (const auto& r : raw) {
    if (const auto it = stored.find(pair_key(r.i, r.j, n)); it != stored.end()) {
      throw DataError(line_error(r.line, "duplicate edge " + labels[r.i] + " -> " +
                                             labels[r.j]));
    }
    if (options.symmetric) {
      if (const auto it = stored.find(pair_key(r.j, r.i, n)); it != stored.end()) {
        if (edges[it->second].w != r.w) {
          throw DataError(line_error(r.line, "reversed edge " + labels[r.i] + " -> " +
                                                 labels[r.j] + " has a conflicting weight"));
        }
        continue;
      }
    }
    stored.emplace(pair_key(r.i, r.j, n), edges.size());
    edges.push_back({r.i, r.j, r.w});
  }

  DatasetOptions dataset_options;
  dataset_options.symmetric = options.symmetric;
  dataset_options.allow_self_loops = options.allow_self_loops;
  dataset_options.unit_weights = options.unit_weights;
  return EdgeDataset(std::make_shared<const NodeSpace>(std::move(labels)),
                     std::move(edges), dataset_options);
}

EdgeDataset parse_edge_list(std::string_view text, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const EdgeDataset& data) {
  const auto& nodes = data.nodes();
  const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& e : data.edges()) {
    out << nodes.label(e.i) << '\t' << nodes.label(e.j) << '\t' << e.w << '\n';
  }
  out.precision(precision);
}

void write_node_list(std::ostream& out, const NodeSpace& nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) out << nodes.label(i) << '\n';
}

std::vector<std::string> read_node_list(std::istream& in) {
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    const auto label = trim(line);
    if (!label.empty()) labels.emplace_back(label);
  }
  return labels;
}

ScaleMethod parse_scale_method(std::string_view name) {
  if (name == "none") return ScaleMethod::kNone;
  if (name == "minmax") return ScaleMethod::kMinMax;
  if (name == "neg_exp_median") return ScaleMethod::kNegExpMedian;
  throw std::invalid_argument("unknown scaling method '" + std::string(name) + "'");
}

EdgeDataset scale_weights(const EdgeDataset& raw, ScaleMethod method) {
  if (raw.empty()) throw DataError("cannot scale an empty dataset");
  for (const auto& e : raw.edges()) {
    if (!std::isfinite(e.w)) throw DataError("non-finite edge weight");
  }
  std::vector<EdgeObservation> edges(raw.edges().begin(), raw.edges().end());
  switch (method) {
    case ScaleMethod::kNone:
      break;
    case ScaleMethod::kMinMax: {
      const auto [lo, hi] = std::minmax_element(
          edges.begin(), edges.end(),
          [](const auto& a, const auto& b) { return a.w < b.w; });
      const double min = lo->w;
      const double range = hi->w - min;
      for (auto& e : edges) e.w = range > 0.0 ? (e.w - min) / range : 0.5;
      break;
    }
    case ScaleMethod::kNegExpMedian: {
      std::vector<double> latencies;
      latencies.reserve(edges.size());
      for (const auto& e : edges) {
        if (e.w < 0.0) throw DataError("negative latency cannot be scaled");
        latencies.push_back(e.w);
      }
      const std::size_t mid = latencies.size() / 2;
      std::nth_element(latencies.begin(), latencies.begin() + mid, latencies.end());
      double median = latencies[mid];
      if (latencies.size() % 2 == 0) {
        median = 0.5 * (median + *std::max_element(latencies.begin(),
                                                   latencies.begin() + mid));
      }
      if (!(median > 0.0)) throw DataError("median latency is zero");
      for (auto& e : edges) e.w = std::exp(-e.w / median);
      break;
    }
  }
  DatasetOptions options = raw.options();
  options.unit_weights = true;
  return EdgeDataset(raw.node_space(), std::move(edges), options);
}

std::array<std::size_t, 3> split_sizes(std::size_t n, SplitFractions f) {
  const double values[3] = {f.train, f.cv, f.test};
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("split fractions must be nonnegative");
    }
  }
  if (std::abs(f.train + f.cv + f.test - 1.0) > 1e-9) {
    throw std::invalid_argument("split fractions must sum to 1");
  }
  auto share = [n](double fraction) {
    const double exact = fraction * static_cast<double>(n);
    const double nearest = std::round(exact);
    if (std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact)) {
      return static_cast<std::size_t>(nearest);
    }
    return static_cast<std::size_t>(std::floor(exact));
  };
  const std::size_t train = std::min(n, share(f.train));
  const std::size_t cv = std::min(n - train, share(f.cv));
  const std::array<std::size_t, 3> sizes{train, cv, n - train - cv};
  for (int k = 0; k < 3; ++k) {
    if (values[k] > 0.0 && sizes[k] == 0) {
      static constexpr const char* kNames[] = {"train", "cv", "test"};
      throw DataError(std::string("split share '") + kNames[k] +
                      "' receives no edges");
    }
  }
  return sizes;
}

SplitResult split(const EdgeDataset& data, SplitFractions fractions,
                  std::uint64_t seed) {
  const auto sizes = split_sizes(data.size(), fractions);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  SplitManifest manifest;
  manifest.seed = seed;
  manifest.fractions = fractions;
  auto begin = order.begin();
  for (int k = 0; k < 3; ++k) {
    auto& idx = manifest.indices[k];
    idx.assign(begin, begin + static_cast<std::ptrdiff_t>(sizes[k]));
    std::sort(idx.begin(), idx.end());
    begin += static_cast<std::ptrdiff_t>(sizes[k]);
  }
  return apply_split(data, manifest);
}

SplitResult apply_split(const EdgeDataset& data, const SplitManifest& manifest) {
  std::vector<char> used(data.size(), 0);
  std::array<std::vector<EdgeObservation>, 3> shares;
  for (int k = 0; k < 3; ++k) {
    for (std::size_t idx : manifest.indices[k]) {
      if (idx >= data.size()) throw DataError("split index out of range");
      if (used[idx]++) throw DataError("split index assigned twice");
      shares[k].push_back(data.edges()[idx]);
    }
  }
  return SplitResult{data.with_edges(std::move(shares[0])),
                     data.with_edges(std::move(shares[1])),
                     data.with_edges(std::move(shares[2])), manifest.indices};
}

void write_split_manifest(std::ostream& out, const SplitManifest& manifest) {
  static constexpr const char* kNames[] = {"train", "cv", "test"};
  const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "# graphclust split manifest\n";
  out << "seed " << manifest.seed << '\n';
  out << "fractions " << manifest.fractions.train << ' ' << manifest.fractions.cv
      << ' ' << manifest.fractions.test << '\n';
  for (int k = 0; k < 3; ++k) {
    out << kNames[k] << ' ' << manifest.indices[k].size() << '\n';
    for (std::size_t m = 0; m < manifest.indices[k].size(); ++m) {
      if (m > 0) out << ' ';
      out << manifest.indices[k][m];
    }
    out << '\n';
  }
  out.precision(precision);
}

SplitManifest read_split_manifest(std::istream& in) {
  SplitManifest manifest;
  std::string line;
  auto next = [&]() -> std::istringstream {
    while (std::getline(in, line)) {
      const auto content = trim(line);
      if (!content.empty() && content.front() != '#') return std::istringstream(line);
    }
    throw DataError("truncated split manifest");
  };
  auto expect = [](std::istringstream& s, const char* key) {
    std::string word;
    if (!(s >> word) || word != key) {
      throw DataError(std::string("split manifest: expected '") + key + "'");
    }
  };
  {
    auto s = next();
    expect(s, "seed");
    if (!(s >> manifest.seed)) throw DataError("split manifest: bad seed");
  }
  {
    auto s = next();
    expect(s, "fractions");
    if (!(s >> manifest.fractions.train >> manifest.fractions.cv >>
          manifest.fractions.test)) {
      throw DataError("split manifest: bad fractions");
    }
  }
  static constexpr const char* kNames[] = {"train", "cv", "test"};
  for (int k = 0; k < 3; ++k) {
    auto header = next();
    expect(header, kNames[k]);
    std::size_t count = 0;
    if (!(header >> count)) throw DataError("split manifest: bad count");
    auto& idx = manifest.indices[k];
    idx.reserve(count);
    if (count > 0) {
      auto body = next();
      std::size_t v = 0;
      while (body >> v) idx.push_back(v);
    } else if (std::getline(in, line) && !trim(line).empty()) {
      throw DataError("split manifest: unexpected indices for empty share");
    }
    if (idx.size() != count) throw DataError("split manifest: count mismatch");
  }
  return manifest;
}

}  // namespace graphclust
