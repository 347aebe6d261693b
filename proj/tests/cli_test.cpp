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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "graphclust/bound.hpp"
#include "graphclust/data.hpp"
#include "graphclust/synth.hpp"

namespace graphclust {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
  std::map<std::string, std::string> values;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "graphclust");
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) r.values[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(GRAPHCLUST_TEST_TMPDIR) /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }
  // synth into <dir>/synth and return the directory.
  std::string synth(std::vector<std::string> extra) const {
    std::vector<std::string> args{"synth", "--out-dir", path("synth")};
    args.insert(args.end(), extra.begin(), extra.end());
    const auto r = run_cli(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return path("synth");
  }
  fs::path dir_;
};

TEST_F(CliTest, SynthThenClusterRecoversBlocks) {
  const auto s = synth({"--nodes", "40", "--blocks", "4", "--intra", "0.9", "--inter", "0.1",
                        "--noise", "0.05", "--seed", "3"});
  const auto r = run_cli({"cluster", "--input", s + "/edges.tsv", "--nodes", s + "/nodes.txt",
                          "--symmetric", "--labels", s + "/labels.tsv", "--clusters", "4",
                          "--beta", "64", "--anneal", "--out-dir", path("fit")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GE(std::stod(r.values.at("ari")), 0.9);
  EXPECT_EQ(r.values.at("nodes"), "40");
  EXPECT_EQ(r.values.at("train_edges"), "780");
  for (const char* f : {"model.txt", "trace.csv", "bound.txt", "nodes.txt"})
    EXPECT_TRUE(fs::exists(path("fit") + "/" + f)) << f;
  const auto trace = slurp(path("fit/trace.csv"));
  EXPECT_EQ(trace.rfind("# seed=0\nrestart,beta,iter,objective,loss,mi\n", 0), 0u);
  EXPECT_EQ(slurp(path("fit/bound.txt")).rfind("seed=0\nbeta=64\n", 0), 0u);
}

TEST_F(CliTest, SynthFilesReparseToGeneratedDataset) {
  const auto s = synth({"--nodes", "15", "--blocks", "3", "--noise", "0.2", "--rate", "0.7",
                        "--seed", "8", "--directed"});
  PlantedPartitionSpec spec;
  spec.num_nodes = 15;
  spec.num_blocks = 3;
  spec.weight_noise = 0.2;
  spec.edge_observation_rate = 0.7;
  spec.seed = 8;
  spec.symmetric = false;
  const auto expected = generate(spec);

  std::ifstream nodes_in(s + "/nodes.txt");
  ParseOptions opt;
  opt.node_labels = read_node_list(nodes_in);
  std::ifstream edges_in(s + "/edges.tsv");
  const auto back = parse_edge_list(edges_in, opt);
  ASSERT_EQ(back.size(), expected.data.size());
  EXPECT_EQ(back.nodes().labels(), expected.data.nodes().labels());
  for (std::size_t k = 0; k < back.size(); ++k) EXPECT_EQ(back.edges()[k], expected.data.edges()[k]);
  std::ifstream labels_in(s + "/labels.tsv");
  EXPECT_EQ(read_labels(labels_in, back.nodes()), expected.labels);

  // cluster echoes the node list it used.
  const auto r = run_cli({"cluster", "--input", s + "/edges.tsv", "--nodes", s + "/nodes.txt",
                          "--restarts", "1", "--out-dir", path("fit")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(path("fit/nodes.txt")), slurp(s + "/nodes.txt"));
}

TEST_F(CliTest, SingleClusterReportsVariance) {
  write("e.tsv", "a\tb\t0.1\nb\tc\t0.4\nc\ta\t0.9\na\td\t0.6\n");
  const auto r = run_cli({"cluster", "--input", path("e.tsv"), "--clusters", "1", "--beta", "5",
                          "--out-dir", path("fit")});
  ASSERT_EQ(r.code, 0) << r.err;
  // Mean 0.5, squared deviations 0.16, 0.01, 0.16, 0.01.
  const double var = (0.16 + 0.01 + 0.16 + 0.01) / 4.0;
  EXPECT_NEAR(std::stod(r.values.at("train_loss")), var, 1e-9);
  EXPECT_EQ(std::stod(r.values.at("mi")), 0.0);
  EXPECT_NE(slurp(path("fit/bound.txt")).find("\nmutual_info=0\n"), std::string::npos);
}

TEST_F(CliTest, SingletonSweepMatchesCluster) {
  const auto s = synth({"--nodes", "12", "--blocks", "2", "--noise", "0.1"});
  const std::vector<std::string> common{"--input", s + "/edges.tsv", "--symmetric",
                                        "--fractions", "0.6,0.2,0.2", "--seed", "4",
                                        "--beta", "2", "--restarts", "3"};
  auto cluster_args = common;
  cluster_args.insert(cluster_args.begin(), "cluster");
  cluster_args.insert(cluster_args.end(), {"--clusters", "2", "--out-dir", path("c")});
  auto sweep_args = common;
  sweep_args.insert(sweep_args.begin(), "sweep");
  sweep_args.insert(sweep_args.end(), {"--cluster-grid", "2", "--out-dir", path("s")});
  const auto c = run_cli(cluster_args);
  const auto w = run_cli(sweep_args);
  ASSERT_EQ(c.code, 0) << c.err;
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_EQ(w.values.at("points"), "1");
  EXPECT_EQ(w.values.at("best_bound"), c.values.at("bound"));

  const auto csv = slurp(path("s/sweep.csv"));
  std::istringstream lines(csv);
  std::string l0, l1, l2, extra;
  std::getline(lines, l0);
  std::getline(lines, l1);
  std::getline(lines, l2);
  EXPECT_EQ(l0, "# seed=4 param=clusters");
  EXPECT_EQ(l1, "param,train_loss,cv_loss,test_loss,mi,bound,min_bound");
  EXPECT_EQ(l2, "2," + c.values.at("train_loss") + "," + c.values.at("cv_loss") + "," +
                    c.values.at("test_loss") + "," + c.values.at("mi") + "," +
                    c.values.at("bound") + ",*");
  EXPECT_FALSE(std::getline(lines, extra));
}

TEST_F(CliTest, BetaSweepWithPlot) {
  const auto s = synth({"--nodes", "12", "--blocks", "2", "--noise", "0.1"});
  const auto r = run_cli({"sweep", "--input", s + "/edges.tsv", "--symmetric", "--beta-grid",
                          "0.5,4,32", "--restarts", "2", "--plot", "--out-dir", path("s")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.values.at("points"), "3");
  EXPECT_TRUE(fs::exists(path("s/sweep.svg")));
  const auto csv = slurp(path("s/sweep.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '*'), 1);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);

  const auto bad = run_cli({"sweep", "--input", s + "/edges.tsv", "--cluster-grid", "3..1",
                            "--out-dir", path("s2")});
  EXPECT_EQ(bad.code, cli::kUsageError);
}

TEST_F(CliTest, BoundIsPassThrough) {
  const auto r = run_cli({"bound", "--loss", "0.1", "--mi", "0", "--num-nodes", "20",
                          "--clusters", "1", "--sample-size", "500", "--alphabet", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  BoundInputs in;
  in.empirical_loss = 0.1;
  in.num_nodes = 20;
  in.num_clusters = 1;
  in.sample_size = 500;
  in.alphabet_size = 2;
  std::ostringstream expected;
  write_bound_report(expected, finite_alphabet_bound(in));
  EXPECT_EQ(r.out, expected.str());

  const auto q = run_cli({"bound", "--loss", "0.02", "--mi", "1.2", "--num-nodes", "1740",
                          "--clusters", "4", "--sample-size", "1000000"});
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_EQ(std::stod(q.values.at("quantization")), 8e-5);
  EXPECT_NEAR(std::stod(q.values.at("expected_loss_bound")), 0.031129656877378855, 1e-12);

  EXPECT_EQ(run_cli({"bound", "--loss", "0.1", "--mi", "2", "--num-nodes", "20", "--clusters",
                     "2", "--sample-size", "50"}).code,
            cli::kUsageError);
}

TEST_F(CliTest, SplitWritesSharesAndManifest) {
  std::ostringstream text;
  for (int k = 0; k < 100; ++k) text << 'n' << k << "\tn" << k + 1 << "\t0.5\n";
  write("e.tsv", text.str());
  const auto r = run_cli({"split", "--input", path("e.tsv"), "--fractions", "0.7,0.1,0.2",
                          "--seed", "9", "--out-dir", path("sp")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.values.at("train"), "70");
  EXPECT_EQ(r.values.at("cv"), "10");
  EXPECT_EQ(r.values.at("test"), "20");

  std::ifstream nodes_in(path("sp/nodes.txt"));
  ParseOptions opt;
  opt.node_labels = read_node_list(nodes_in);
  std::size_t total = 0;
  for (const char* f : {"sp/train.tsv", "sp/cv.tsv", "sp/test.tsv"}) {
    std::ifstream in(path(f));
    total += parse_edge_list(in, opt).size();
  }
  EXPECT_EQ(total, 100u);
  std::ifstream manifest_in(path("sp/split_manifest.txt"));
  const auto m = read_split_manifest(manifest_in);
  EXPECT_EQ(m.seed, 9u);
  EXPECT_EQ(m.indices[0].size(), 70u);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, cli::kUsageError);
  EXPECT_EQ(run_cli({"cluster"}).code, cli::kUsageError);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kSuccess);
  EXPECT_EQ(run_cli({"cluster", "--input", path("missing.tsv"), "--out-dir", path("o")}).code,
            cli::kDataError);

  write("bad.tsv", "a\tb\t0.5\na\tc\n");
  const auto bad = run_cli({"cluster", "--input", path("bad.tsv"), "--out-dir", path("o")});
  EXPECT_EQ(bad.code, cli::kDataError);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos) << bad.err;

  write("ok.tsv", "a\tb\t0.5\nb\tc\t0.1\nc\ta\t0.9\n");
  EXPECT_EQ(run_cli({"cluster", "--input", path("ok.tsv"), "--fractions", "0.5,0.6,0",
                     "--out-dir", path("o")}).code,
            cli::kUsageError);
  EXPECT_EQ(run_cli({"cluster", "--input", path("ok.tsv"), "--quantization", "0.1",
                     "--alphabet", "2", "--out-dir", path("o")}).code,
            cli::kUsageError);
  const auto capped = run_cli({"cluster", "--input", path("ok.tsv"), "--anneal", "--beta", "8",
                               "--max-iters", "2", "--out-dir", path("o")});
  EXPECT_EQ(capped.code, cli::kIterationCap);
  EXPECT_TRUE(capped.values.count("bound"));
  EXPECT_EQ(run_cli({"synth", "--nodes", "4", "--blocks", "9", "--out-dir", path("o")}).code,
            cli::kUsageError);
}

TEST_F(CliTest, ScaledLatencies) {
  write("lat.tsv", "a\tb\t10\nb\tc\t20\nc\ta\t40\n");
  const auto r = run_cli({"cluster", "--input", path("lat.tsv"), "--scale", "neg_exp_median",
                          "--clusters", "1", "--out-dir", path("o")});
  ASSERT_EQ(r.code, 0) << r.err;
  const double w[] = {std::exp(-0.5), std::exp(-1.0), std::exp(-2.0)};
  const double mean = (w[0] + w[1] + w[2]) / 3.0;
  double var = 0.0;
  for (double v : w) var += (v - mean) * (v - mean) / 3.0;
  EXPECT_NEAR(std::stod(r.values.at("train_loss")), var, 1e-9);
  EXPECT_EQ(run_cli({"cluster", "--input", path("lat.tsv"), "--out-dir", path("o")}).code,
            cli::kDataError);
}

}  // namespace
}  // namespace graphclust
