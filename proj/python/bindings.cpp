// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>

#include "fairscore/barycenter.hpp"
#include "fairscore/divergence.hpp"
#include "fairscore/empirical.hpp"
#include "fairscore/errors.hpp"
#include "fairscore/fairness.hpp"
#include "fairscore/serialize.hpp"
#include "fairscore/synth.hpp"
#include "fairscore/transport.hpp"

namespace py = pybind11;
using namespace fairscore;

namespace {

// Eigen types cross the boundary as nested lists to keep the module free
// of a NumPy dependency.
Eigen::VectorXd to_vector(const std::vector<double>& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = v[i];
  }
  return out;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& m) {
  if (m.empty()) {
    throw DimError("matrix must be non-empty");
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.size()),
                      static_cast<Eigen::Index>(m.front().size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.front().size()) {
      throw DimError("matrix rows have unequal lengths");
    }
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m[i][j];
    }
  }
  return out;
}

std::vector<std::vector<double>> from_matrix(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out[static_cast<std::size_t>(i)].resize(
        static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          m(i, j);
    }
  }
  return out;
}

std::vector<double> from_vector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

GroupedScores make_grouped(
    const std::vector<std::tuple<std::string, double, std::string>>& rows) {
  std::vector<ScoreRecord> records;
  records.reserve(rows.size());
  for (const auto& [id, score, group] : rows) {
    records.push_back(ScoreRecord{id, score, group, std::nullopt});
  }
  return GroupedScores(std::move(records));
}

GroupedScores make_grouped_with_outcomes(
    const std::vector<std::tuple<std::string, double, std::string, int>>&
        rows) {
  std::vector<ScoreRecord> records;
  records.reserve(rows.size());
  for (const auto& [id, score, group, outcome] : rows) {
    records.push_back(ScoreRecord{id, score, group, outcome});
  }
  return GroupedScores(std::move(records));
}

Metric metric_from_name(const std::string& name) {
  if (name == "w1") return Metric::W1;
  if (name == "w2") return Metric::W2;
  if (name == "tv") return Metric::TV;
  if (name == "kl") return Metric::KL;
  if (name == "js") return Metric::JS;
  throw ValidationError("unknown metric '" + name +
                        "', expected w1/w2/tv/kl/js");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Score fairness toolkit: empirical distributions, distribution "
      "distances, optimal transport maps, and barycenter mitigation.";

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_ArithmeticError);

  py::class_<EmpiricalDistribution>(m, "EmpiricalDistribution")
      .def(py::init<std::vector<double>>(), py::arg("samples"))
      .def("cdf", &EmpiricalDistribution::cdf, py::arg("x"))
      .def("quantile", &EmpiricalDistribution::quantile, py::arg("u"))
      .def("values", &EmpiricalDistribution::values)
      .def("__len__", &EmpiricalDistribution::size)
      .def_property_readonly("min", &EmpiricalDistribution::min)
      .def_property_readonly("max", &EmpiricalDistribution::max);

  py::class_<BinnedDistribution>(m, "BinnedDistribution")
      .def(py::init<std::vector<double>, std::vector<double>>(),
           py::arg("edges"), py::arg("masses"))
      .def_readonly("edges", &BinnedDistribution::edges)
      .def_readonly("masses", &BinnedDistribution::masses);

  m.def("uniform_edges", &uniform_edges, py::arg("bins"), py::arg("lo") = 0.0,
        py::arg("hi") = 1.0);
  m.def("bin_scores", &bin_scores, py::arg("dist"), py::arg("edges"));
  m.def("total_variation", &total_variation, py::arg("p"), py::arg("q"),
        py::arg("one_sided") = false);
  m.def("kl_divergence", &kl_divergence, py::arg("p"), py::arg("q"),
        py::arg("smooth") = false);
  m.def("js_divergence", &js_divergence, py::arg("p"), py::arg("q"));
  m.def(
      "wasserstein",
      [](const std::vector<double>& x, const std::vector<double>& y, int k) {
        return wasserstein_empirical(EmpiricalDistribution(x),
                                     EmpiricalDistribution(y), k);
      },
      py::arg("x"), py::arg("y"), py::arg("k") = 2);
  m.def(
      "ot_cost_bruteforce",
      [](const std::vector<double>& x, const std::vector<double>& y, int k) {
        return ot_cost_bruteforce(x, y, k);
      },
      py::arg("x"), py::arg("y"), py::arg("k") = 2);

  py::class_<GaussianParams>(m, "GaussianParams")
      .def(py::init([](const std::vector<double>& mean,
                       const std::vector<std::vector<double>>& cov) {
             return GaussianParams(to_vector(mean), to_matrix(cov));
           }),
           py::arg("mean"), py::arg("covariance"))
      .def_static("univariate", &GaussianParams::univariate, py::arg("mu"),
                  py::arg("sigma2"))
      .def_property_readonly(
          "mean", [](const GaussianParams& g) { return from_vector(g.mean); })
      .def_property_readonly("covariance", [](const GaussianParams& g) {
        return from_matrix(g.covariance);
      });

  m.def("wasserstein_gaussian", &wasserstein_gaussian, py::arg("g0"),
        py::arg("g1"));
  m.def(
      "matrix_sqrt",
      [](const std::vector<std::vector<double>>& mat) {
        return from_matrix(matrix_sqrt(to_matrix(mat)));
      },
      py::arg("m"));

  py::class_<TransportMap>(m, "TransportMap")
      .def("__call__", &TransportMap::apply, py::arg("x"));
  m.def(
      "fit_monotone_map",
      [](const std::vector<double>& source, const std::vector<double>& target) {
        return fit_monotone_map(EmpiricalDistribution(source),
                                EmpiricalDistribution(target));
      },
      py::arg("source"), py::arg("target"));

  py::class_<AffineMap>(m, "AffineMap")
      .def("apply1d", &AffineMap::apply1d, py::arg("x"))
      .def(
          "apply",
          [](const AffineMap& map, const std::vector<double>& x) {
            return from_vector(map.apply(to_vector(x)));
          },
          py::arg("x"))
      .def_property_readonly(
          "linear",
          [](const AffineMap& map) { return from_matrix(map.linear); });
  m.def("fit_gaussian_map", &fit_gaussian_map, py::arg("g0"), py::arg("g1"));
  m.def("gaussian_barycenter", &gaussian_barycenter, py::arg("params"),
        py::arg("weights"));

  py::class_<GroupedScores>(m, "GroupedScores")
      .def(py::init(&make_grouped), py::arg("records"))
      .def(py::init(&make_grouped_with_outcomes), py::arg("records"))
      .def("__len__", &GroupedScores::size)
      .def_property_readonly("group_labels", &GroupedScores::group_labels);

  py::class_<ScaledScore>(m, "ScaledScore")
      .def_readonly("value", &ScaledScore::value)
      .def_readonly("clamped", &ScaledScore::clamped);

  py::class_<ScalingTransform>(m, "ScalingTransform")
      .def("apply", &ScalingTransform::apply, py::arg("score"),
           py::arg("group"))
      .def("factor", &ScalingTransform::factor, py::arg("group"))
      .def_property_readonly("factors", &ScalingTransform::factors)
      .def("to_json",
           [](const ScalingTransform& t) { return dump_json(to_json(t)); });
  m.def("fit_scaling", &fit_scaling, py::arg("data"));

  py::class_<BarycenterTransform>(m, "BarycenterTransform")
      .def("apply", &BarycenterTransform::apply, py::arg("score"),
           py::arg("group"))
      .def_property_readonly("labels", &BarycenterTransform::labels)
      .def_property_readonly("weights", &BarycenterTransform::weights)
      .def_property_readonly("is_identity", &BarycenterTransform::is_identity)
      .def("to_json", [](const BarycenterTransform& t) {
        return dump_json(to_json(t));
      });
  m.def("fit_barycenter", &fit_barycenter, py::arg("data"));

  m.def(
      "transform_from_json",
      [](const std::string& text) {
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
          throw ValidationError(std::string("invalid JSON: ") + e.what());
        }
        return std::visit(
            [](auto&& t) { return py::cast(std::move(t)); },
            transform_from_json(j));
      },
      py::arg("text"));

  m.def("weak_dp_gap", &weak_dp_gap, py::arg("data"));
  m.def(
      "strong_dp_distance",
      [](const GroupedScores& data, const std::string& metric,
         const std::vector<double>& edges) {
        std::map<std::pair<std::string, std::string>, double> raw =
            strong_dp_distance(data, metric_from_name(metric), edges);
        py::dict out;
        for (const auto& [key, value] : raw) {
          out[py::make_tuple(key.first, key.second)] = value;
        }
        return out;
      },
      py::arg("data"), py::arg("metric"),
      py::arg("edges") = std::vector<double>{});

  py::class_<BalanceResult>(m, "BalanceResult")
      .def_readonly("mean_score", &BalanceResult::mean_score)
      .def_readonly("mean_outcome", &BalanceResult::mean_outcome)
      .def_readonly("gap", &BalanceResult::gap)
      .def_readonly("relative_gap", &BalanceResult::relative_gap)
      .def_readonly("balanced", &BalanceResult::balanced);
  m.def("balance_check", &balance_check, py::arg("data"),
        py::arg("tolerance") = 0.01);

  m.def(
      "synthetic_csv",
      [](std::uint64_t seed,
         const std::vector<std::tuple<std::string, std::size_t, double>>&
             groups) {
        SynthConfig config;
        config.seed = seed;
        for (const auto& [label, count, target_mean] : groups) {
          SynthGroupSpec g;
          g.label = label;
          g.count = count;
          g.target_mean = target_mean;
          config.groups.push_back(std::move(g));
        }
        return write_score_table(generate_synthetic(config));
      },
      py::arg("seed"), py::arg("groups"));
}
