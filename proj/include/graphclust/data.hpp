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

#ifndef GRAPHCLUST_DATA_HPP_
#define GRAPHCLUST_DATA_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace graphclust {

// Raised for malformed or inconsistent input data (bad lines, out-of-range
// weights, conflicting duplicates). Configuration mistakes use
// std::invalid_argument instead.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The node space X. Labels are optional; when present they are distinct and
// index i maps to labels()[i].
class NodeSpace {
 public:
  explicit NodeSpace(std::size_t size);
  explicit NodeSpace(std::vector<std::string> labels);

  std::size_t size() const { return size_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }

  // Label of node i; the decimal index when the space is unlabeled.
  std::string label(std::size_t i) const;
  std::optional<std::size_t> find(std::string_view label) const;

 private:
  std::size_t size_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct EdgeObservation {
  std::size_t i;
  std::size_t j;
  double w;

  friend bool operator==(const EdgeObservation&, const EdgeObservation&) = default;
};

struct DatasetOptions {
  bool symmetric = false;
  bool allow_self_loops = false;
  // Permits repeated (i,j) pairs, as produced by i.i.d. sampling of edges.
  // Parsed and split datasets never set this.
  bool with_replacement = false;
  // Require every weight to lie in [0,1]. Raw data that is scaled afterwards
  // is constructed with this off.
  bool unit_weights = true;
};

// A sample of N observed edge weights over a shared node space. Immutable.
class EdgeDataset {
 public:
  EdgeDataset(std::shared_ptr<const NodeSpace> nodes,
              std::vector<EdgeObservation> edges, DatasetOptions options = {});

  const NodeSpace& nodes() const { return *nodes_; }
  const std::shared_ptr<const NodeSpace>& node_space() const { return nodes_; }
  std::size_t num_nodes() const { return nodes_->size(); }
  std::span<const EdgeObservation> edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  bool symmetric() const { return options_.symmetric; }
  const DatasetOptions& options() const { return options_; }

  double mean_weight() const;
  // Population variance of the observed weights.
  double weight_variance() const;

  // Same node space and options, different edges.
  EdgeDataset with_edges(std::vector<EdgeObservation> edges) const;

 private:
  std::shared_ptr<const NodeSpace> nodes_;
  std::vector<EdgeObservation> edges_;
  DatasetOptions options_;
};

struct ParseOptions {
  bool symmetric = false;
  bool allow_self_loops = false;
  // When false, weights may be any finite real (to be passed to
  // scale_weights afterwards).
  bool unit_weights = true;
  char comment_prefix = '#';
  // Predeclared node labels. Nodes listed here keep their order and exist
  // even without incident edges; unseen labels are appended.
  std::vector<std::string> node_labels;
};

// Reads `src<TAB>dst<TAB>weight` lines. Labels are indexed in order of first
// appearance. Duplicate pairs are an error, except that in symmetric mode a
// reversed copy with an equal weight is merged.
EdgeDataset parse_edge_list(std::istream& in, const ParseOptions& options = {});
EdgeDataset parse_edge_list(std::string_view text, const ParseOptions& options = {});

// Writes edges in the format read by parse_edge_list, weights at full
// precision.
void write_edge_list(std::ostream& out, const EdgeDataset& data);

// One label per line, in index order.
void write_node_list(std::ostream& out, const NodeSpace& nodes);
std::vector<std::string> read_node_list(std::istream& in);

enum class ScaleMethod { kNone, kMinMax, kNegExpMedian };

ScaleMethod parse_scale_method(std::string_view name);

EdgeDataset scale_weights(const EdgeDataset& raw, ScaleMethod method);

struct SplitFractions {
  double train = 1.0;
  double cv = 0.0;
  double test = 0.0;
};

struct SplitResult {
  EdgeDataset train;
  EdgeDataset cv;
  EdgeDataset test;
  // Positions into the input edge list for each share.
  std::array<std::vector<std::size_t>, 3> indices;
};

// Uniformly random partition of the edges. Train and cv sizes are
// floor(fraction * N); test receives the remainder.
SplitResult split(const EdgeDataset& data, SplitFractions fractions,
                  std::uint64_t seed);

// Sizes split() would produce, without shuffling.
std::array<std::size_t, 3> split_sizes(std::size_t n, SplitFractions fractions);

struct SplitManifest {
  std::uint64_t seed = 0;
  SplitFractions fractions;
  std::array<std::vector<std::size_t>, 3> indices;
};

void write_split_manifest(std::ostream& out, const SplitManifest& manifest);
SplitManifest read_split_manifest(std::istream& in);

// Rebuilds the three shares recorded in a manifest.
SplitResult apply_split(const EdgeDataset& data, const SplitManifest& manifest);

}  // namespace graphclust

#endif  // GRAPHCLUST_DATA_HPP_
