// Copyright 2026 The woamlp Authors. All Rights Reserved.
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

#include "woamlp/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "woamlp/feature_io.hpp"
#include "woamlp/metrics.hpp"
#include "woamlp/trainer.hpp"
#include "woamlp/woa.hpp"

namespace woamlp::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

std::string sibling(const std::string& path, const std::string& suffix) {
  fs::path p(path);
  p.replace_extension();
  return p.string() + suffix;
}

std::string history_csv(const std::vector<double>& history) {
  std::string out = "iteration,best_fitness\n";
  char buf[64];
  for (std::size_t t = 0; t < history.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", t, history[t]);
    out += buf;
  }
  return out;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
      return kUsage;
    case ErrorKind::kIo:
      return kIo;
    case ErrorKind::kData:
      return kDataValidation;
    case ErrorKind::kNumeric:
      return kNumeric;
  }
  return kUsage;
}

// Flag values that override the config file when given.
struct TrainFlags {
  std::string config;
  RunConfig values;
};

int do_fuse(const std::string& a, const std::string& b, const std::string& o,
            std::ostream& out) {
  const FeatureTable fused = fuse(load_feature_table(a), load_feature_table(b));
  save_feature_table(fused, o);
  out << "fused " << fused.rows() << " samples, " << fused.cols()
      << " features -> " << o << '\n';
  return kOk;
}

int do_train(const TrainFlags& flags, const CLI::App& cmd, std::ostream& out) {
  RunConfig cfg;
  if (!flags.config.empty()) merge_config_json(read_file(flags.config), cfg);
  const RunConfig& f = flags.values;
  auto given = [&cmd](const char* name) { return cmd.count(name) > 0; };
  if (given("--data")) cfg.data = f.data;
  if (given("--output")) cfg.output = f.output;
  if (given("--history-out")) cfg.history_out = f.history_out;
  if (given("--test-out")) cfg.test_out = f.test_out;
  if (given("--config-out")) cfg.config_out = f.config_out;
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--test-fraction")) cfg.test_fraction = f.test_fraction;
  if (given("--no-normalize")) cfg.normalize = false;
  if (given("--weight-bound")) cfg.weight_bound = f.weight_bound;
  if (given("--hidden")) cfg.hidden_layers = f.hidden_layers;
  if (given("--activation")) cfg.hidden_activation = f.hidden_activation;
  if (given("--population")) cfg.population_size = f.population_size;
  if (given("--iterations")) cfg.max_iterations = f.max_iterations;
  if (given("--spiral-b")) cfg.spiral_shape = f.spiral_shape;
  if (given("--workers")) cfg.workers = f.workers;

  if (cfg.data.empty()) throw UsageError("train: no data file given");
  if (cfg.output.empty()) throw UsageError("train: no output path given");
  if (!fs::exists(cfg.data)) throw IoError("data file not found: " + cfg.data);
  if (cfg.history_out.empty()) cfg.history_out = sibling(cfg.output, ".history.csv");
  if (cfg.config_out.empty()) cfg.config_out = sibling(cfg.output, ".config.json");
  if (cfg.test_fraction > 0.0 && cfg.test_out.empty()) {
    cfg.test_out = sibling(cfg.output, ".test.csv");
  }
  if (cfg.test_fraction < 0.0 || cfg.test_fraction >= 1.0) {
    throw UsageError("test_fraction must lie in [0, 1)");
  }

  const FeatureTable data = load_feature_table(cfg.data);
  if (data.class_names().size() < 2) {
    throw DataError("training data needs at least two classes");
  }
  FeatureTable train_set = data;
  if (cfg.test_fraction > 0.0) {
    Split parts = split(data, cfg.test_fraction, cfg.seed);
    save_feature_table(parts.test, cfg.test_out);
    train_set = std::move(parts.train);
  }

  TrainConfig tc;
  tc.topology.layers.push_back(data.cols());
  tc.topology.layers.insert(tc.topology.layers.end(), cfg.hidden_layers.begin(),
                            cfg.hidden_layers.end());
  tc.topology.layers.push_back(data.class_names().size());
  tc.topology.hidden = activation_from_string(cfg.hidden_activation);
  tc.weight_bound = cfg.weight_bound;
  tc.normalize = cfg.normalize;
  tc.woa.population_size = cfg.population_size;
  tc.woa.max_iterations = cfg.max_iterations;
  tc.woa.spiral_shape = cfg.spiral_shape;
  tc.woa.seed = cfg.seed;
  tc.woa.workers = cfg.workers;

  write_file(cfg.config_out, config_to_json(cfg));
  const TrainedModel model = train(tc, train_set);
  save_model(model, cfg.output);
  write_file(cfg.history_out, history_csv(model.history));

  std::size_t correct = 0;
  for (std::size_t i = 0; i < train_set.rows(); ++i) {
    if (predict(model, train_set.row(i)).label == train_set.labels()[i]) {
      ++correct;
    }
  }
  out << "trained " << param_count(tc.topology) << " parameters on "
      << train_set.rows() << " samples; best fitness "
      << model.history.back() << "; training accuracy "
      << static_cast<double>(correct) / static_cast<double>(train_set.rows())
      << '\n';
  out << "model -> " << cfg.output << ", config -> " << cfg.config_out << '\n';
  return kOk;
}

struct EvalFlags {
  std::string model;
  std::string data;
  std::string predictions;
  std::string positive;
  std::string out_json;
  std::string text_out;
  std::string predictions_out;
};

int do_eval(const EvalFlags& f, std::ostream& out) {
  std::vector<std::string> ids;
  std::vector<std::string> truth;
  std::vector<std::string> preds;
  std::string positive = f.positive;
  if (!f.predictions.empty()) {
    if (!f.model.empty() || !f.data.empty()) {
      throw UsageError("eval: use either --predictions or --model/--data");
    }
    std::istringstream lines(read_file(f.predictions));
    std::string line;
    std::getline(lines, line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "id,truth,prediction") {
      throw DataError(f.predictions + ": header must be id,truth,prediction");
    }
    while (std::getline(lines, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      if (cells.size() != 3) {
        throw DataError(f.predictions + ": expected 3 cells in '" + line + "'");
      }
      ids.push_back(cells[0]);
      truth.push_back(cells[1]);
      preds.push_back(cells[2]);
    }
    if (positive.empty() && !truth.empty()) {
      positive = *std::min_element(truth.begin(), truth.end());
    }
  } else {
    if (f.model.empty() || f.data.empty()) {
      throw UsageError("eval: --model and --data are required");
    }
    const TrainedModel model = load_model(f.model);
    const FeatureTable data = load_feature_table(f.data);
    for (std::size_t i = 0; i < data.rows(); ++i) {
      ids.push_back(data.sample_ids()[i]);
      truth.push_back(data.labels()[i]);
      preds.push_back(predict(model, data.row(i)).label);
    }
    if (positive.empty()) positive = model.class_names.front();
  }

  const MetricsReport report = metrics_report(confusion(preds, truth, positive));
  const std::string text = report_to_text(report);
  out << text;
  if (!f.out_json.empty()) write_file(f.out_json, report_to_json(report) + "\n");
  if (!f.text_out.empty()) write_file(f.text_out, text);
  if (!f.predictions_out.empty()) {
    std::string csv = "id,truth,prediction\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      csv += ids[i] + "," + truth[i] + "," + preds[i] + "\n";
    }
    write_file(f.predictions_out, csv);
  }
  return kOk;
}

struct BenchFlags {
  std::string objective = "sphere";
  std::size_t dim = 10;
  std::size_t population = 30;
  std::size_t iterations = 200;
  double bound = 10.0;
  double spiral_shape = 1.0;
  std::uint64_t seed = 42;
  std::size_t workers = 1;
  std::string output;
};

int do_bench(const BenchFlags& f, std::ostream& out) {
  WoaConfig cfg;
  cfg.population_size = f.population;
  cfg.max_iterations = f.iterations;
  cfg.bounds = Bounds::uniform(f.dim, -f.bound, f.bound);
  cfg.spiral_shape = f.spiral_shape;
  cfg.seed = f.seed;
  cfg.workers = f.workers;
  const WoaState state = optimize(benchmark_objective(f.objective), cfg);
  const std::string csv = history_csv(state.history);
  if (!f.output.empty()) {
    write_file(f.output, csv);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", state.best_fitness);
  out << f.objective << " dim=" << f.dim << " seed=" << f.seed
      << " best_fitness=" << buf << '\n';
  return kOk;
}

}  // namespace

std::string config_to_json(const RunConfig& c) {
  json j{
      {"data", c.data},
      {"output", c.output},
      {"history_out", c.history_out},
      {"test_out", c.test_out},
      {"config_out", c.config_out},
      {"seed", c.seed},
      {"test_fraction", c.test_fraction},
      {"normalize", c.normalize},
      {"weight_bound", c.weight_bound},
      {"topology",
       {{"hidden_layers", c.hidden_layers},
        {"hidden_activation", c.hidden_activation}}},
      {"woa",
       {{"population_size", c.population_size},
        {"max_iterations", c.max_iterations},
        {"spiral_shape", c.spiral_shape},
        {"workers", c.workers}}},
  };
  return j.dump(2) + "\n";
}

void merge_config_json(const std::string& text, RunConfig& into) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("bad config: expected a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "data") {
        into.data = value.get<std::string>();
      } else if (key == "output") {
        into.output = value.get<std::string>();
      } else if (key == "history_out") {
        into.history_out = value.get<std::string>();
      } else if (key == "test_out") {
        into.test_out = value.get<std::string>();
      } else if (key == "config_out") {
        into.config_out = value.get<std::string>();
      } else if (key == "seed") {
        into.seed = value.get<std::uint64_t>();
      } else if (key == "test_fraction") {
        into.test_fraction = value.get<double>();
      } else if (key == "normalize") {
        into.normalize = value.get<bool>();
      } else if (key == "weight_bound") {
        into.weight_bound = value.get<double>();
      } else if (key == "topology") {
        for (const auto& [k, v] : value.items()) {
          if (k == "hidden_layers") {
            into.hidden_layers = v.get<std::vector<std::size_t>>();
          } else if (k == "hidden_activation") {
            into.hidden_activation = v.get<std::string>();
          } else {
            throw UsageError("bad config: unknown key topology." + k);
          }
        }
      } else if (key == "woa") {
        for (const auto& [k, v] : value.items()) {
          if (k == "population_size") {
            into.population_size = v.get<std::size_t>();
          } else if (k == "max_iterations") {
            into.max_iterations = v.get<std::size_t>();
          } else if (k == "spiral_shape") {
            into.spiral_shape = v.get<double>();
          } else if (k == "workers") {
            into.workers = v.get<std::size_t>();
          } else {
            throw UsageError("bad config: unknown key woa." + k);
          }
        }
      } else {
        throw UsageError("bad config: unknown key " + key);
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Whale-optimized MLP classification on fused feature tables",
               "woamlp"};
  app.require_subcommand(1);

  std::string fuse_a, fuse_b, fuse_out;
  auto* fuse_cmd = app.add_subcommand("fuse", "Concatenate two feature tables");
  fuse_cmd->add_option("a", fuse_a, "First feature CSV")->required();
  fuse_cmd->add_option("b", fuse_b, "Second feature CSV")->required();
  fuse_cmd->add_option("-o,--output", fuse_out, "Fused CSV")->required();

  TrainFlags tf;
  auto* train_cmd = app.add_subcommand("train", "Split, normalize and train");
  train_cmd->add_option("--config", tf.config, "JSON config file");
  train_cmd->add_option("--data", tf.values.data, "Feature CSV");
  train_cmd->add_option("-o,--output", tf.values.output, "Model JSON");
  train_cmd->add_option("--history-out", tf.values.history_out,
                        "Convergence CSV (default <output>.history.csv)");
  train_cmd->add_option("--test-out", tf.values.test_out,
                        "Held-out split CSV (default <output>.test.csv)");
  train_cmd->add_option("--config-out", tf.values.config_out,
                        "Resolved config echo (default <output>.config.json)");
  train_cmd->add_option("--seed", tf.values.seed, "Random seed");
  train_cmd->add_option("--test-fraction", tf.values.test_fraction,
                        "Held-out fraction per class, 0 to train on all");
  train_cmd->add_flag("--no-normalize", "Skip z-score normalization");
  train_cmd->add_option("--weight-bound", tf.values.weight_bound,
                        "Parameter search box half-width");
  train_cmd->add_option("--hidden", tf.values.hidden_layers,
                        "Hidden layer sizes");
  train_cmd->add_option("--activation", tf.values.hidden_activation,
                        "Hidden activation: sigmoid, tanh or relu");
  train_cmd->add_option("--population", tf.values.population_size,
                        "Number of search agents");
  train_cmd->add_option("--iterations", tf.values.max_iterations,
                        "Optimizer iterations");
  train_cmd->add_option("--spiral-b", tf.values.spiral_shape,
                        "Spiral shape constant");
  train_cmd->add_option("--workers", tf.values.workers,
                        "Threads for fitness evaluation");

  EvalFlags ef;
  auto* eval_cmd = app.add_subcommand("eval", "Score a model on labeled data");
  eval_cmd->add_option("--model", ef.model, "Model JSON");
  eval_cmd->add_option("--data", ef.data, "Feature CSV");
  eval_cmd->add_option("--predictions", ef.predictions,
                       "CSV id,truth,prediction to score instead of a model");
  eval_cmd->add_option("--positive", ef.positive,
                       "Positive class (default: first model class)");
  eval_cmd->add_option("-o,--output", ef.out_json, "Metrics JSON");
  eval_cmd->add_option("--text-out", ef.text_out, "Metrics table");
  eval_cmd->add_option("--predictions-out", ef.predictions_out,
                       "Write id,truth,prediction CSV");

  BenchFlags bf;
  auto* bench_cmd = app.add_subcommand("bench", "Run WOA on a test function");
  bench_cmd->add_option("--objective", bf.objective,
                        "sphere, rosenbrock or rastrigin");
  bench_cmd->add_option("--dim", bf.dim, "Dimension");
  bench_cmd->add_option("--population", bf.population, "Number of agents");
  bench_cmd->add_option("--iterations", bf.iterations, "Iterations");
  bench_cmd->add_option("--bound", bf.bound, "Box half-width");
  bench_cmd->add_option("--spiral-b", bf.spiral_shape, "Spiral shape constant");
  bench_cmd->add_option("--seed", bf.seed, "Random seed");
  bench_cmd->add_option("--workers", bf.workers, "Evaluation threads");
  bench_cmd->add_option("-o,--output", bf.output, "Convergence CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*fuse_cmd) return do_fuse(fuse_a, fuse_b, fuse_out, out);
    if (*train_cmd) return do_train(tf, *train_cmd, out);
    if (*eval_cmd) return do_eval(ef, out);
    if (*bench_cmd) return do_bench(bf, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace woamlp::cli
