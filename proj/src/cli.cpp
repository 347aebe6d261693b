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

#include "graphclust/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "graphclust/bound.hpp"
#include "graphclust/data.hpp"
#include "graphclust/metrics.hpp"
#include "graphclust/model.hpp"
#include "graphclust/optimizer.hpp"
#include "graphclust/synth.hpp"

namespace graphclust::cli {

namespace {

namespace fs = std::filesystem;

// Seed stride between sweep grid points; larger than any restart count.
constexpr std::uint64_t kGridSeedStride = 1000003;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataArgs {
  std::string input;
  std::string nodes;
  bool symmetric = false;
  bool allow_self_loops = false;
  std::string scale = "none";
};

struct TrainArgs {
  std::size_t clusters = 2;
  double beta = 1.0;
  double delta = 0.05;
  std::optional<double> quantization;
  std::optional<double> alphabet;
  std::string fractions = "1,0,0";
  std::uint64_t seed = 0;
  std::size_t restarts = 10;
  bool anneal = false;
  std::size_t iters = 5;
  double noise = 2.0;
  double init_spread = 2.0;
  std::size_t max_iters = 100000;
  std::string labels;
  std::string out_dir = ".";
};

struct PointResult {
  double param = 0.0;
  double train_loss = 0.0;
  double cv_loss = std::numeric_limits<double>::quiet_NaN();
  double test_loss = std::numeric_limits<double>::quiet_NaN();
  double mi = 0.0;
  BoundReport bound;
  std::optional<OptimizeResult> fit;
};

void add_data_options(CLI::App& cmd, DataArgs& args) {
  cmd.add_option("--input", args.input, "Edge list: src<TAB>dst<TAB>weight")
      ->required();
  cmd.add_option("--nodes", args.nodes, "Node list fixing the node space (one label per line)");
  cmd.add_flag("--symmetric", args.symmetric, "Treat edges as undirected (one copy per pair)");
  cmd.add_flag("--allow-self-loops", args.allow_self_loops, "Accept i == j edges");
  cmd.add_option("--scale", args.scale, "Weight scaling: none, minmax, neg_exp_median")
      ->check(CLI::IsMember({"none", "minmax", "neg_exp_median"}));
}

void add_train_options(CLI::App& cmd, TrainArgs& args) {
  cmd.add_option("--beta", args.beta, "Trade-off parameter beta");
  cmd.add_option("--delta", args.delta, "Bound confidence parameter");
  auto* q = cmd.add_option("--quantization", args.quantization,
                           "Weight quantization step (default 5|C|^2/N)");
  cmd.add_option("--alphabet", args.alphabet, "Number of distinct weights |W|")->excludes(q);
  cmd.add_option("--fractions", args.fractions, "train,cv,test fractions");
  cmd.add_option("--seed", args.seed, "Root random seed");
  cmd.add_option("--restarts", args.restarts, "Random restarts");
  cmd.add_flag("--anneal", args.anneal, "Anneal beta from 1/N in two-fold steps");
  cmd.add_option("--iters", args.iters, "Alternating steps per beta level");
  cmd.add_option("--noise", args.noise, "Log-normal kick between beta levels");
  cmd.add_option("--init-spread", args.init_spread, "Log-normal spread of initial rows");
  cmd.add_option("--max-iters", args.max_iters, "Per-restart iteration cap");
  cmd.add_option("--labels", args.labels, "Ground-truth labels (node<TAB>label) for ARI");
  cmd.add_option("--out-dir", args.out_dir, "Output directory");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) items.push_back(item);
  }
  if (items.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return items;
}

double to_double(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
  return value;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> values;
  for (const auto& item : split_list(text)) values.push_back(to_double(item));
  return values;
}

// Comma list of integers, each item optionally a range `a..b`.
std::vector<std::size_t> parse_cluster_grid(const std::string& text) {
  std::vector<std::size_t> values;
  for (const auto& item : split_list(text)) {
    const auto dots = item.find("..");
    const auto parse = [&](const std::string& s) {
      const double v = to_double(s);
      if (v < 1 || v != std::floor(v)) {
        throw std::invalid_argument("cluster counts must be positive integers");
      }
      return static_cast<std::size_t>(v);
    };
    if (dots == std::string::npos) {
      values.push_back(parse(item));
      continue;
    }
    const auto lo = parse(item.substr(0, dots));
    const auto hi = parse(item.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty cluster range '" + item + "'");
    for (auto c = lo; c <= hi; ++c) values.push_back(c);
  }
  return values;
}

SplitFractions parse_fractions(const std::string& text) {
  const auto values = parse_doubles(text);
  if (values.size() != 3) throw std::invalid_argument("--fractions needs three values");
  return {values[0], values[1], values[2]};
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
  return fs::path(dir);
}

EdgeDataset load_dataset(const DataArgs& args) {
  const auto method = parse_scale_method(args.scale);
  ParseOptions options;
  options.symmetric = args.symmetric;
  options.allow_self_loops = args.allow_self_loops;
  options.unit_weights = method == ScaleMethod::kNone;
  if (!args.nodes.empty()) {
    auto in = open_input(args.nodes);
    options.node_labels = read_node_list(in);
  }
  auto in = open_input(args.input);
  auto data = parse_edge_list(in, options);
  return method == ScaleMethod::kNone ? data : scale_weights(data, method);
}

std::string format(double value) {
  if (std::isnan(value)) return "nan";
  std::ostringstream s;
  s << std::setprecision(10) << value;
  return s.str();
}

PointResult train_point(const SplitResult& shares, const TrainArgs& args,
                        std::size_t clusters, double beta, std::uint64_t seed) {
  OptimizerConfig config;
  config.beta = beta;
  config.num_clusters = clusters;
  config.anneal = args.anneal;
  config.iters_per_beta = args.iters;
  config.noise_scale = args.noise;
  config.init_spread = args.init_spread;
  config.restarts = args.restarts;
  config.seed = seed;
  config.max_total_iters = args.max_iters;

  PointResult point;
  point.fit = optimize(shares.train, config);
  const auto& model = point.fit->model;
  point.train_loss = empirical_loss(model, shares.train);
  point.mi = mutual_information(model.assignment);
  if (!shares.cv.empty()) point.cv_loss = empirical_loss(model, shares.cv);
  if (!shares.test.empty()) point.test_loss = empirical_loss(model, shares.test);

  BoundInputs inputs;
  inputs.empirical_loss = point.train_loss;
  inputs.mutual_info = std::min(point.mi, std::log(static_cast<double>(clusters)));
  inputs.num_nodes = shares.train.num_nodes();
  inputs.num_clusters = clusters;
  inputs.sample_size = shares.train.size();
  inputs.delta = args.delta;
  if (args.alphabet) {
    inputs.alphabet_size = args.alphabet;
  } else {
    inputs.quantization =
        args.quantization.value_or(default_quantization(clusters, shares.train.size()));
  }
  point.bound = compute_bound(inputs);
  return point;
}

int cmd_cluster(const DataArgs& data_args, const TrainArgs& args, std::ostream& out) {
  const auto data = load_dataset(data_args);
  const auto shares = split(data, parse_fractions(args.fractions), args.seed);
  const auto point = train_point(shares, args, args.clusters, args.beta, args.seed);
  const auto dir = prepare_dir(args.out_dir);

  {
    auto f = open_output(dir / "model.txt");
    write_model(f, point.fit->model);
  }
  {
    auto f = open_output(dir / "trace.csv");
    f << "# seed=" << args.seed << '\n';
    write_trace_csv(f, point.fit->trace);
  }
  {
    auto f = open_output(dir / "bound.txt");
    f << "seed=" << args.seed << '\n' << "beta=" << format(args.beta) << '\n';
    write_bound_report(f, point.bound);
  }
  {
    auto f = open_output(dir / "nodes.txt");
    write_node_list(f, data.nodes());
  }

  out << "seed=" << args.seed << '\n'
      << "nodes=" << data.num_nodes() << '\n'
      << "train_edges=" << shares.train.size() << '\n'
      << "train_loss=" << format(point.train_loss) << '\n'
      << "mi=" << format(point.mi) << '\n'
      << "bound=" << format(point.bound.expected_loss_bound) << '\n';
  if (!shares.cv.empty()) out << "cv_loss=" << format(point.cv_loss) << '\n';
  if (!shares.test.empty()) out << "test_loss=" << format(point.test_loss) << '\n';
  if (!args.labels.empty()) {
    auto in = open_input(args.labels);
    const auto truth = read_labels(in, data.nodes());
    const auto found = point.fit->model.assignment.hard_labels();
    out << "ari=" << format(adjusted_rand_index(truth, found)) << '\n';
  }
  if (point.fit->trace.iteration_cap_hit) {
    out << "warning=iteration cap reached; best model so far returned\n";
    return kIterationCap;
  }
  return kSuccess;
}

void write_sweep_svg(std::ostream& out, const std::vector<PointResult>& rows,
                     const std::string& param_name, bool log_x, std::size_t best) {
  constexpr double kWidth = 640, kHeight = 400, kMargin = 50;
  auto x_of = [&](double v) { return log_x ? std::log2(v) : v; };
  double x_lo = x_of(rows.front().param), x_hi = x_lo;
  double y_hi = 0.0;
  for (const auto& r : rows) {
    x_lo = std::min(x_lo, x_of(r.param));
    x_hi = std::max(x_hi, x_of(r.param));
    for (double v : {r.train_loss, r.cv_loss, r.test_loss, r.bound.expected_loss_bound}) {
      if (!std::isnan(v)) y_hi = std::max(y_hi, v);
    }
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= 0.0) y_hi = 1.0;
  auto px = [&](double v) {
    return kMargin + (x_of(v) - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin);
  };
  auto py = [&](double v) { return kHeight - kMargin - v / y_hi * (kHeight - 2 * kMargin); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">" << (log_x ? "log2 " : "") << param_name << "</text>\n"
      << "<text x=\"5\" y=\"" << kMargin - 10 << "\">max " << format(y_hi) << "</text>\n";

  struct Series {
    const char* name;
    const char* color;
    double PointResult::*field;
  };
  const Series series[] = {{"train", "#1f77b4", &PointResult::train_loss},
                           {"cv", "#2ca02c", &PointResult::cv_loss},
                           {"test", "#ff7f0e", &PointResult::test_loss}};
  int legend = 0;
  auto polyline = [&](const char* name, const char* color, auto value_of) {
    std::ostringstream pts;
    bool any = false;
    for (const auto& r : rows) {
      const double v = value_of(r);
      if (std::isnan(v)) continue;
      pts << px(r.param) << ',' << py(v) << ' ';
      any = true;
    }
    if (!any) return;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
        << pts.str() << "\"/>\n"
        << "<text x=\"" << kWidth - kMargin - 60 << "\" y=\"" << kMargin + 15 * legend++
        << "\" fill=\"" << color << "\">" << name << "</text>\n";
  };
  for (const auto& s : series) {
    polyline(s.name, s.color, [&](const PointResult& r) { return r.*(s.field); });
  }
  polyline("bound", "#d62728",
           [](const PointResult& r) { return r.bound.expected_loss_bound; });
  const auto& b = rows[best];
  out << "<text x=\"" << px(b.param) << "\" y=\"" << py(b.bound.expected_loss_bound) + 6
      << "\" text-anchor=\"middle\" font-size=\"20\">*</text>\n</svg>\n";
}

int cmd_sweep(const DataArgs& data_args, const TrainArgs& args,
              const std::string& beta_grid, const std::string& cluster_grid,
              bool plot, std::ostream& out) {
  if (!beta_grid.empty() && !cluster_grid.empty()) {
    throw std::invalid_argument("give either --beta-grid or --cluster-grid, not both");
  }
  const bool over_clusters = !cluster_grid.empty();
  std::vector<double> params;
  if (over_clusters) {
    for (auto c : parse_cluster_grid(cluster_grid)) params.push_back(static_cast<double>(c));
  } else if (!beta_grid.empty()) {
    params = parse_doubles(beta_grid);
  } else {
    for (int k = -4; k <= 8; ++k) params.push_back(std::ldexp(1.0, k));
  }
  for (double p : params) {
    if (!(p > 0.0)) throw std::invalid_argument("grid values must be positive");
  }

  const auto data = load_dataset(data_args);
  const auto shares = split(data, parse_fractions(args.fractions), args.seed);

  std::vector<PointResult> rows;
  bool cap_hit = false;
  for (std::size_t k = 0; k < params.size(); ++k) {
    const std::size_t clusters =
        over_clusters ? static_cast<std::size_t>(params[k]) : args.clusters;
    const double beta = over_clusters ? args.beta : params[k];
    auto point = train_point(shares, args, clusters, beta, args.seed + k * kGridSeedStride);
    point.param = params[k];
    cap_hit = cap_hit || point.fit->trace.iteration_cap_hit;
    point.fit.reset();
    rows.push_back(std::move(point));
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].bound.expected_loss_bound < rows[best].bound.expected_loss_bound) best = k;
  }

  const auto dir = prepare_dir(args.out_dir);
  {
    auto f = open_output(dir / "sweep.csv");
    f << "# seed=" << args.seed << ' ' << (over_clusters ? "param=clusters" : "param=beta")
      << '\n';
    f << "param,train_loss,cv_loss,test_loss,mi,bound,min_bound\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto& r = rows[k];
      f << format(r.param) << ',' << format(r.train_loss) << ',' << format(r.cv_loss) << ','
        << format(r.test_loss) << ',' << format(r.mi) << ','
        << format(r.bound.expected_loss_bound) << ',' << (k == best ? "*" : "") << '\n';
    }
  }
  if (plot) {
    auto f = open_output(dir / "sweep.svg");
    write_sweep_svg(f, rows, over_clusters ? "|C|" : "beta", !over_clusters, best);
  }
  {
    auto f = open_output(dir / "nodes.txt");
    write_node_list(f, data.nodes());
  }
  out << "seed=" << args.seed << '\n'
      << "points=" << rows.size() << '\n'
      << "best_param=" << format(rows[best].param) << '\n'
      << "best_bound=" << format(rows[best].bound.expected_loss_bound) << '\n';
  return cap_hit ? kIterationCap : kSuccess;
}

int cmd_split(const DataArgs& data_args, const std::string& fractions,
              std::uint64_t seed, const std::string& out_dir, std::ostream& out) {
  const auto data = load_dataset(data_args);
  const auto shares = split(data, parse_fractions(fractions), seed);
  const auto dir = prepare_dir(out_dir);
  const std::pair<const char*, const EdgeDataset*> files[] = {
      {"train.tsv", &shares.train}, {"cv.tsv", &shares.cv}, {"test.tsv", &shares.test}};
  for (const auto& [name, share] : files) {
    auto f = open_output(dir / name);
    write_edge_list(f, *share);
  }
  {
    auto f = open_output(dir / "split_manifest.txt");
    write_split_manifest(f, {seed, parse_fractions(fractions), shares.indices});
  }
  {
    auto f = open_output(dir / "nodes.txt");
    write_node_list(f, data.nodes());
  }
  out << "seed=" << seed << '\n'
      << "train=" << shares.train.size() << '\n'
      << "cv=" << shares.cv.size() << '\n'
      << "test=" << shares.test.size() << '\n';
  return kSuccess;
}

int cmd_synth(const PlantedPartitionSpec& spec, const std::string& out_dir,
              std::ostream& out) {
  const auto graph = generate(spec);
  const auto dir = prepare_dir(out_dir);
  {
    auto f = open_output(dir / "edges.tsv");
    write_edge_list(f, graph.data);
  }
  {
    auto f = open_output(dir / "labels.tsv");
    write_labels(f, graph.data.nodes(), graph.labels);
  }
  {
    auto f = open_output(dir / "nodes.txt");
    write_node_list(f, graph.data.nodes());
  }
  out << "seed=" << spec.seed << '\n'
      << "nodes=" << graph.data.num_nodes() << '\n'
      << "edges=" << graph.data.size() << '\n'
      << "exact_truth_loss="
      << format(exact_expected_loss(ground_truth_model(graph), graph.truth)) << '\n';
  return kSuccess;
}

int cmd_bound(BoundInputs inputs, std::ostream& out) {
  if (!inputs.quantization && !inputs.alphabet_size) {
    inputs.quantization = default_quantization(inputs.num_clusters, inputs.sample_size);
  }
  write_bound_report(out, compute_bound(inputs));
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph clustering with a PAC-Bayesian edge-weight prediction bound",
               "graphclust"};
  app.require_subcommand(1);

  DataArgs data_args;
  TrainArgs train_args;

  auto* cluster = app.add_subcommand("cluster", "Train one model and report its bound");
  add_data_options(*cluster, data_args);
  add_train_options(*cluster, train_args);
  cluster->add_option("--clusters", train_args.clusters, "Number of clusters |C|");

  auto* sweep = app.add_subcommand("sweep", "Train over a grid of beta or |C|");
  std::string beta_grid, cluster_grid;
  bool plot = false;
  add_data_options(*sweep, data_args);
  add_train_options(*sweep, train_args);
  sweep->add_option("--clusters", train_args.clusters, "|C| for a beta sweep");
  auto* bg = sweep->add_option("--beta-grid", beta_grid, "Comma-separated beta values");
  sweep->add_option("--cluster-grid", cluster_grid, "Cluster counts, e.g. 1..15 or 2,4,8")
      ->excludes(bg);
  sweep->add_flag("--plot", plot, "Also write sweep.svg");

  auto* split_cmd = app.add_subcommand("split", "Split an edge list into train/cv/test");
  std::string fractions = "1,0,0";
  std::uint64_t split_seed = 0;
  std::string split_dir = ".";
  add_data_options(*split_cmd, data_args);
  split_cmd->add_option("--fractions", fractions, "train,cv,test fractions")->required();
  split_cmd->add_option("--seed", split_seed, "Random seed");
  split_cmd->add_option("--out-dir", split_dir, "Output directory");

  auto* synth = app.add_subcommand("synth", "Generate a planted-partition graph");
  PlantedPartitionSpec spec;
  bool directed = false, binary = false;
  std::string synth_dir = ".";
  synth->add_option("--nodes", spec.num_nodes, "Number of nodes");
  synth->add_option("--blocks", spec.num_blocks, "Number of planted blocks");
  synth->add_option("--intra", spec.intra_weight_mean, "Mean weight inside blocks");
  synth->add_option("--inter", spec.inter_weight_mean, "Mean weight across blocks");
  synth->add_option("--noise", spec.weight_noise, "Half-width of uniform weight noise");
  synth->add_option("--rate", spec.edge_observation_rate, "Pair observation probability");
  synth->add_option("--seed", spec.seed, "Random seed");
  synth->add_flag("--directed", directed, "Sample ordered pairs instead of unordered");
  synth->add_flag("--binary", binary, "Bernoulli 0/1 weights with the block means");
  synth->add_option("--out-dir", synth_dir, "Output directory");

  auto* bound = app.add_subcommand("bound", "Evaluate the generalization bound");
  BoundInputs inputs;
  std::optional<double> quantization, alphabet;
  bound->add_option("--loss", inputs.empirical_loss, "Empirical loss")->required();
  bound->add_option("--mi", inputs.mutual_info, "Mutual information (nats)")->required();
  bound->add_option("--num-nodes", inputs.num_nodes, "|X|")->required();
  bound->add_option("--clusters", inputs.num_clusters, "|C|")->required();
  bound->add_option("--sample-size", inputs.sample_size, "N")->required();
  bound->add_option("--delta", inputs.delta, "Confidence parameter");
  auto* bq = bound->add_option("--quantization", quantization, "Quantization step");
  bound->add_option("--alphabet", alphabet, "Number of distinct weights |W|")->excludes(bq);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*cluster) return cmd_cluster(data_args, train_args, out);
    if (*sweep) {
      return cmd_sweep(data_args, train_args, beta_grid, cluster_grid, plot, out);
    }
    if (*split_cmd) return cmd_split(data_args, fractions, split_seed, split_dir, out);
    if (*synth) {
      spec.symmetric = !directed;
      spec.weight_model = binary ? WeightModel::kBernoulli : WeightModel::kTruncatedUniform;
      return cmd_synth(spec, synth_dir, out);
    }
    if (*bound) {
      inputs.quantization = quantization;
      inputs.alphabet_size = alphabet;
      return cmd_bound(inputs, out);
    }
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}

}  // namespace graphclust::cli
