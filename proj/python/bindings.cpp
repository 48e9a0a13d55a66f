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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "woamlp/feature_io.hpp"
#include "woamlp/metrics.hpp"
#include "woamlp/nn.hpp"
#include "woamlp/trainer.hpp"
#include "woamlp/woa.hpp"

namespace py = pybind11;
using namespace woamlp;

namespace {

MlpTopology make_topology(std::vector<std::size_t> layers,
                          const std::string& activation) {
  MlpTopology t{std::move(layers), activation_from_string(activation)};
  t.validate();
  return t;
}

Grid to_grid(const std::vector<std::vector<double>>& rows) {
  const std::size_t h = rows.size();
  const std::size_t w = h ? rows.front().size() : 0;
  std::vector<double> data;
  for (const auto& r : rows) {
    if (r.size() != w) throw DataError("ragged matrix");
    data.insert(data.end(), r.begin(), r.end());
  }
  return Grid(h, w, std::move(data));
}

std::vector<std::vector<double>> from_grid(const Grid& g) {
  std::vector<std::vector<double>> out(g.rows());
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) out[r].push_back(g(r, c));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_woamlp, m) {
  m.doc() = "Whale-optimized MLP classification on fused feature tables";

  py::register_exception<Error>(m, "WoamlpError", PyExc_RuntimeError);

  py::class_<FeatureTable>(m, "FeatureTable")
      .def(py::init([](std::vector<std::string> ids,
                       std::vector<std::vector<double>> rows,
                       std::vector<std::string> labels) {
             const std::size_t d = rows.empty() ? 0 : rows.front().size();
             std::vector<double> flat;
             for (const auto& r : rows) {
               if (r.size() != d) throw DataError("ragged feature rows");
               flat.insert(flat.end(), r.begin(), r.end());
             }
             return FeatureTable(std::move(ids), std::move(flat), d,
                                 std::move(labels));
           }),
           py::arg("sample_ids"), py::arg("features"), py::arg("labels"))
      .def_property_readonly("rows", &FeatureTable::rows)
      .def_property_readonly("cols", &FeatureTable::cols)
      .def_property_readonly("sample_ids", &FeatureTable::sample_ids)
      .def_property_readonly("labels", &FeatureTable::labels)
      .def_property_readonly("class_names", &FeatureTable::class_names)
      .def("row",
           [](const FeatureTable& t, std::size_t i) {
             if (i >= t.rows()) throw py::index_error();
             auto r = t.row(i);
             return std::vector<double>(r.begin(), r.end());
           })
      .def("class_counts", &FeatureTable::class_counts);

  py::class_<Normalizer>(m, "Normalizer")
      .def_readonly("means", &Normalizer::means)
      .def_readonly("stddevs", &Normalizer::stddevs);

  m.def("load_feature_table", &load_feature_table, py::arg("path"));
  m.def("save_feature_table", &save_feature_table, py::arg("table"),
        py::arg("path"));
  m.def("fuse", &fuse, py::arg("a"), py::arg("b"));
  m.def("fit_normalizer", &fit_normalizer, py::arg("table"));
  m.def("apply_normalizer", &apply_normalizer, py::arg("table"),
        py::arg("normalizer"));
  m.def(
      "split",
      [](const FeatureTable& t, double fraction, std::uint64_t seed) {
        Split s = split(t, fraction, seed);
        return py::make_tuple(s.train, s.test);
      },
      py::arg("table"), py::arg("test_fraction"), py::arg("seed"));

  py::class_<MlpTopology>(m, "MlpTopology")
      .def(py::init(&make_topology), py::arg("layers"),
           py::arg("hidden_activation") = "sigmoid")
      .def_readonly("layers", &MlpTopology::layers)
      .def_property_readonly("hidden_activation", [](const MlpTopology& t) {
        return to_string(t.hidden);
      });

  m.def("param_count", &param_count, py::arg("topology"));
  m.def(
      "mlp_forward",
      [](const MlpTopology& t, const std::vector<double>& p,
         const std::vector<double>& x) { return mlp_forward(t, p, x); },
      py::arg("topology"), py::arg("params"), py::arg("x"));
  m.def(
      "cnn_layer_forward",
      [](const std::vector<std::vector<double>>& input,
         const std::vector<std::vector<double>>& kernel, double bias,
         std::size_t pool_window, const std::string& pool) {
        ConvLayerSpec spec{to_grid(kernel), bias, pool_window, PoolKind::kMax};
        if (pool == "average") {
          spec.pool = PoolKind::kAverage;
        } else if (pool == "sum") {
          spec.pool = PoolKind::kSum;
        } else if (pool != "max") {
          throw UsageError("pool must be max, average or sum");
        }
        return from_grid(cnn_layer_forward(to_grid(input), spec));
      },
      py::arg("input"), py::arg("kernel"), py::arg("bias") = 0.0,
      py::arg("pool_window") = 1, py::arg("pool") = "max");

  m.def("coefficient_a", &coefficient_a, py::arg("t"), py::arg("T"));
  m.def(
      "encircle_update",
      [](const Position& x, const Position& best, const Position& A,
         const Position& C) { return encircle_update(x, best, A, C); },
      py::arg("x"), py::arg("x_best"), py::arg("A"), py::arg("C"));
  m.def(
      "spiral_update",
      [](const Position& x, const Position& best, double b, double l) {
        return spiral_update(x, best, b, l);
      },
      py::arg("x"), py::arg("x_best"), py::arg("b"), py::arg("l"));
  m.def(
      "explore_update",
      [](const Position& x, const Position& rand, const Position& A,
         const Position& C) { return explore_update(x, rand, A, C); },
      py::arg("x"), py::arg("x_rand"), py::arg("A"), py::arg("C"));

  py::class_<WoaState>(m, "WoaState")
      .def_readonly("best_position", &WoaState::best_position)
      .def_readonly("best_fitness", &WoaState::best_fitness)
      .def_readonly("history", &WoaState::history)
      .def_readonly("positions", &WoaState::positions);

  // Python objectives hold the GIL, so evaluation stays single-threaded.
  m.def(
      "optimize",
      [](const std::function<double(std::vector<double>)>& objective,
         std::vector<double> lower, std::vector<double> upper,
         std::size_t population_size, std::size_t max_iterations,
         double spiral_shape, std::uint64_t seed) {
        WoaConfig cfg;
        cfg.population_size = population_size;
        cfg.max_iterations = max_iterations;
        cfg.bounds = {std::move(lower), std::move(upper)};
        cfg.spiral_shape = spiral_shape;
        cfg.seed = seed;
        return optimize(
            [&objective](std::span<const double> x) {
              return objective(std::vector<double>(x.begin(), x.end()));
            },
            cfg);
      },
      py::arg("objective"), py::arg("lower"), py::arg("upper"),
      py::arg("population_size") = 30, py::arg("max_iterations") = 200,
      py::arg("spiral_shape") = 1.0, py::arg("seed") = 42);
  m.def(
      "bench",
      [](const std::string& name, std::size_t dim, double bound,
         std::size_t population_size, std::size_t max_iterations,
         std::uint64_t seed, std::size_t workers) {
        WoaConfig cfg;
        cfg.population_size = population_size;
        cfg.max_iterations = max_iterations;
        cfg.bounds = Bounds::uniform(dim, -bound, bound);
        cfg.seed = seed;
        cfg.workers = workers;
        const Objective f = benchmark_objective(name);
        py::gil_scoped_release release;
        return optimize(f, cfg);
      },
      py::arg("objective"), py::arg("dim"), py::arg("bound") = 10.0,
      py::arg("population_size") = 30, py::arg("max_iterations") = 200,
      py::arg("seed") = 42, py::arg("workers") = 1);

  py::class_<TrainedModel>(m, "TrainedModel")
      .def_readonly("topology", &TrainedModel::topology)
      .def_readonly("params", &TrainedModel::params)
      .def_readonly("normalizer", &TrainedModel::normalizer)
      .def_readonly("class_names", &TrainedModel::class_names)
      .def_readonly("history", &TrainedModel::history)
      .def("to_json", &model_to_json);

  m.def(
      "train",
      [](const FeatureTable& data, std::vector<std::size_t> hidden_layers,
         const std::string& hidden_activation, std::size_t population_size,
         std::size_t max_iterations, double weight_bound, bool normalize,
         double spiral_shape, std::uint64_t seed, std::size_t workers) {
        TrainConfig cfg;
        cfg.topology.layers.push_back(data.cols());
        cfg.topology.layers.insert(cfg.topology.layers.end(),
                                   hidden_layers.begin(), hidden_layers.end());
        cfg.topology.layers.push_back(data.class_names().size());
        cfg.topology.hidden = activation_from_string(hidden_activation);
        cfg.woa.population_size = population_size;
        cfg.woa.max_iterations = max_iterations;
        cfg.woa.spiral_shape = spiral_shape;
        cfg.woa.seed = seed;
        cfg.woa.workers = workers;
        cfg.weight_bound = weight_bound;
        cfg.normalize = normalize;
        py::gil_scoped_release release;
        return train(cfg, data);
      },
      py::arg("data"), py::arg("hidden_layers") = std::vector<std::size_t>{10},
      py::arg("hidden_activation") = "sigmoid",
      py::arg("population_size") = 30, py::arg("max_iterations") = 200,
      py::arg("weight_bound") = 10.0, py::arg("normalize") = true,
      py::arg("spiral_shape") = 1.0, py::arg("seed") = 42,
      py::arg("workers") = 1);
  m.def(
      "predict",
      [](const TrainedModel& model, const std::vector<double>& x) {
        Prediction p = predict(model, x);
        return py::make_tuple(p.label, p.probabilities);
      },
      py::arg("model"), py::arg("x"));
  m.def("save_model", &save_model, py::arg("model"), py::arg("path"));
  m.def("load_model", &load_model, py::arg("path"));
  m.def("model_from_json", &model_from_json, py::arg("text"));

  py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
      .def(py::init([](std::uint64_t tp, std::uint64_t fn, std::uint64_t fp,
                       std::uint64_t tn, std::string positive_class) {
             return ConfusionMatrix{tp, fn, fp, tn, std::move(positive_class)};
           }),
           py::arg("tp"), py::arg("fn"), py::arg("fp"), py::arg("tn"),
           py::arg("positive_class") = "positive")
      .def_readonly("tp", &ConfusionMatrix::tp)
      .def_readonly("fn", &ConfusionMatrix::fn)
      .def_readonly("fp", &ConfusionMatrix::fp)
      .def_readonly("tn", &ConfusionMatrix::tn)
      .def_readonly("positive_class", &ConfusionMatrix::positive_class);

  py::class_<MetricsReport>(m, "MetricsReport")
      .def_readonly("acc", &MetricsReport::acc)
      .def_readonly("sen", &MetricsReport::sen)
      .def_readonly("spe", &MetricsReport::spe)
      .def_readonly("pre", &MetricsReport::pre)
      .def_readonly("f1", &MetricsReport::f1)
      .def_readonly("mcc", &MetricsReport::mcc)
      .def_readonly("kappa", &MetricsReport::kappa)
      .def_readonly("cm", &MetricsReport::cm)
      .def("to_json", &report_to_json)
      .def("to_text", &report_to_text, py::arg("title") = "Model");

  m.def(
      "confusion",
      [](const std::vector<std::string>& preds,
         const std::vector<std::string>& truth, const std::string& positive) {
        return confusion(preds, truth, positive);
      },
      py::arg("preds"), py::arg("truth"), py::arg("positive_class"));
  m.def("metrics_report", &metrics_report, py::arg("cm"));
}
