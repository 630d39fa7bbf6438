// Python bindings for the expose-sim core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "exposim/config.hpp"
#include "exposim/distributions.hpp"
#include "exposim/error.hpp"
#include "exposim/exposure.hpp"
#include "exposim/fitting.hpp"
#include "exposim/ingest.hpp"
#include "exposim/link_budget.hpp"
#include "exposim/model_io.hpp"
#include "exposim/path_loss.hpp"
#include "exposim/random.hpp"
#include "exposim/workflow.hpp"

namespace py = pybind11;
using namespace exposim;

namespace {

std::vector<double> draw(const PleDistribution& d, std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = d.sample(rng);
  return xs;
}

py::dict params_dict(const PleDistribution& d) {
  py::dict out;
  const auto j = distribution_to_json(d);
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      out[py::str(key)] = value.get<std::string>();
    } else {
      out[py::str(key)] = value.get<double>();
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Small-cell EMF exposure simulation core";
  m.attr("__version__") = kVersion;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<EmptyInputError>(m, "EmptyInputError", PyExc_ValueError);
  py::register_exception<FitError>(m, "FitError", PyExc_RuntimeError);

  m.def("free_space_intercept", py::overload_cast<double>(&free_space_intercept),
        py::arg("carrier_hz"), "20 log10(4 pi / lambda) in dB.");
  m.def("path_loss", py::overload_cast<double, double, double>(&path_loss),
        py::arg("intercept_db"), py::arg("gamma"), py::arg("distance_m"));
  m.def("extract_ple", &extract_ple, py::arg("path_loss_db"), py::arg("intercept_db"),
        py::arg("distance_m"));

  py::class_<PleDistribution>(m, "PleDistribution")
      .def_static("gev", &PleDistribution::gev, py::arg("shape"), py::arg("scale"),
                  py::arg("location"))
      .def_static("scaled_beta", &PleDistribution::scaled_beta, py::arg("alpha1"),
                  py::arg("alpha2"), py::arg("lower"), py::arg("upper"))
      .def_static("uniform", &PleDistribution::uniform, py::arg("lower"), py::arg("upper"))
      .def_static("fixed", &PleDistribution::fixed, py::arg("value"))
      .def_property_readonly("kind", [](const PleDistribution& d) {
        return std::string(to_string(d.kind()));
      })
      .def_property_readonly("params", &params_dict)
      .def("pdf", &PleDistribution::pdf)
      .def("cdf", &PleDistribution::cdf)
      .def("quantile", &PleDistribution::quantile)
      .def("mean", &PleDistribution::mean)
      .def("variance", &PleDistribution::variance)
      .def("support", &PleDistribution::support)
      .def("sample", &draw, py::arg("n"), py::arg("seed") = 0)
      .def("log_likelihood",
           [](const PleDistribution& d, const std::vector<double>& xs) {
             return d.log_likelihood(xs);
           })
      .def("__repr__", [](const PleDistribution& d) {
        return "PleDistribution(" + distribution_to_json(d).dump() + ")";
      });

  m.def(
      "fit_gev",
      [](const std::vector<double>& xs) { return fit_gev(xs); }, py::arg("gammas"));
  m.def(
      "fit_scaled_beta",
      [](const std::vector<double>& xs, std::optional<std::pair<double, double>> support) {
        FitOptions opts;
        opts.beta_support = support;
        return fit_scaled_beta(xs, opts);
      },
      py::arg("gammas"), py::arg("support") = py::none());
  m.def(
      "ks_test",
      [](const std::vector<double>& xs, const PleDistribution& d) {
        const FitReport r = ks_test(xs, d);
        return py::make_tuple(r.ks_statistic, r.ks_p_value);
      },
      py::arg("gammas"), py::arg("candidate"), "Returns (statistic, p_value).");

  m.def(
      "uplink_tx_power",
      [](double path_loss_db, double resource_blocks, double p0_dbm, double alpha) {
        RadioConfig cfg;
        cfg.p0_dbm = p0_dbm;
        cfg.alpha = alpha;
        cfg.validate();
        return uplink_tx_power(cfg, path_loss_db, resource_blocks);
      },
      py::arg("path_loss_db"), py::arg("resource_blocks") = 1.0, py::arg("p0_dbm") = -96.0,
      py::arg("alpha") = 1.0);
  m.def(
      "uplink_dose",
      [](double sar_ul, double mean_ul_time_s, double period_s, double mean_tx_power_w) {
        SarEntry s;
        s.sar_ul = sar_ul;
        return uplink_dose(s, mean_ul_time_s, period_s, mean_tx_power_w);
      },
      py::arg("sar_ul"), py::arg("mean_ul_time_s"), py::arg("period_s"),
      py::arg("mean_tx_power_w"));
  m.def(
      "downlink_dose",
      [](double sar_dl, double mean_received_power_w, double carrier_mhz) {
        SarEntry s;
        s.sar_dl = sar_dl;
        return downlink_dose(s, mean_received_power_w, FrequencyBand::from_mhz(carrier_mhz));
      },
      py::arg("sar_dl"), py::arg("mean_received_power_w"), py::arg("carrier_mhz"));
  m.def("gps_distance", py::overload_cast<double, double, double, double>(&gps_distance),
        py::arg("lat1"), py::arg("lon1"), py::arg("lat2"), py::arg("lon2"));

  m.def(
      "_simulate_json",
      [](const std::filesystem::path& config, std::optional<std::uint64_t> seed,
         std::optional<std::size_t> workers, std::optional<std::size_t> n_observations) {
        RunConfig cfg = load_run_config(config);
        if (seed) cfg.seed = *seed;
        if (workers) cfg.worker_count = *workers;
        if (n_observations) cfg.n_observations = *n_observations;
        SimulationResult result;
        {
          py::gil_scoped_release release;
          result = simulate(cfg);
        }
        return report_to_json(cfg, result).dump();
      },
      py::arg("config"), py::arg("seed") = py::none(), py::arg("workers") = py::none(),
      py::arg("n_observations") = py::none());
}
