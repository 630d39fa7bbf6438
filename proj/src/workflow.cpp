// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "exposim/workflow.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "exposim/error.hpp"
#include "number_format.hpp"

namespace exposim {

using detail::format_number;
using nlohmann::json;

namespace {

json regression_json(const RegressionFit& r) {
  return {{"gamma", r.gamma},
          {"intercept_db", r.intercept_db},
          {"mean_residual_db", r.mean_residual_db},
          {"residual_std_db", r.residual_std_db},
          {"n_points", r.n_points}};
}

json fit_report_json(const FitReport& r) {
  return {{"distribution", distribution_to_json(r.candidate)},
          {"ks_statistic", r.ks_statistic},
          {"ks_p_value", r.ks_p_value},
          {"n_points", r.n_points}};
}

json breakdown_json(const EiBreakdown& b) {
  return {{"stratum", b.stratum},
          {"fraction", b.fraction},
          {"n_observations", b.n_observations},
          {"mean_tx_power_w", b.mean_tx_power_w},
          {"mean_received_power_w", b.mean_received_power_w},
          {"mean_ul_time_s", b.mean_ul_time_s},
          {"dl_time_s", b.dl_time_s},
          {"ul_exposure_w_per_kg", b.ul_exposure},
          {"dl_exposure_w_per_kg", b.dl_exposure},
          {"ei_w_per_kg", b.ei}};
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  return out;
}

std::string band_suffix(const BandRun& run) {
  return format_number(std::round(run.model.band.carrier_mhz()));
}

}  // namespace

ModelFitResult fit_model(std::span<const DriveTestRecord> records,
                         const ModelFitRequest& request) {
  std::map<std::string, std::size_t> rejections;
  std::vector<DriveTestRecord> on_band;
  for (const auto& r : records) {
    if (std::abs(r.band_mhz - request.band.carrier_mhz()) < 0.5) {
      on_band.push_back(r);
    } else {
      ++rejections["other_band"];
    }
  }

  SampleConversion conv =
      to_pathloss_samples(on_band, request.sc_position, request.sc_gain_db);
  for (const auto& [reason, count] : conv.rejections) rejections[reason] += count;
  if (conv.samples.size() < 2) throw EmptyInputError("no valid samples");
  std::map<std::string, std::size_t> per_tool;
  for (auto& s : conv.samples) {
    s.band = request.band;
    ++per_tool[s.tool];
  }

  const double intercept = free_space_intercept(request.band);
  const RegressionFit pinned = fit_log_distance(conv.samples, intercept);
  const RegressionFit free_fit = fit_log_distance(conv.samples);

  const PleSeries series = extract_ple_series(conv.samples, intercept);
  if (series.rejected > 0) rejections["inside_reference_distance"] += series.rejected;
  const BreakpointSplit split = split_by_breakpoint(series.points, request.breakpoint_m);
  const std::vector<double> near = gammas_of(split.near);
  const std::vector<double> far = gammas_of(split.far);

  const PleDistribution near_model = fit_gev(near, request.near_options);
  const PleDistribution far_model = fit_scaled_beta(far, request.far_options);
  const FitReport near_fit = ks_test(near, near_model);
  const FitReport far_fit = ks_test(far, far_model);

  json provenance;
  provenance["n_samples"] = conv.samples.size();
  provenance["samples_per_tool"] = per_tool;
  provenance["rejections"] = rejections;
  provenance["implausible_path_loss"] = conv.implausible;
  provenance["regression_fixed_intercept"] = regression_json(pinned);
  provenance["regression_free"] = regression_json(free_fit);
  provenance["near_fit"] = fit_report_json(near_fit);
  provenance["far_fit"] = fit_report_json(far_fit);
  provenance["sc_position"] = {request.sc_position.latitude, request.sc_position.longitude};
  provenance["sc_gain_db"] = request.sc_gain_db;

  return ModelFitResult{
      ModelFile{request.band, intercept,
                BandedPleDistribution(near_model, far_model, request.breakpoint_m), provenance},
      pinned,
      free_fit,
      near_fit,
      far_fit,
      std::move(per_tool),
      std::move(rejections),
      conv.implausible};
}

SimulationResult simulate(const RunConfig& cfg) {
  if (cfg.model_files.empty()) throw FormatError("config names no model file");
  SimulationResult result;
  for (const auto& path : cfg.model_files) {
    BandRun run{read_model_file(path), {}, {}, {}, false};
    run.radio = radio_for_band(cfg, run.model.band);
    const MonteCarloSpec spec{cfg.seed, cfg.n_observations, cfg.worker_count};
    run.observations = run_observations(cfg.geometry, cfg.occupancy, run.model.path_loss_model(),
                                        run.radio, spec);
    if (cfg.calibrate_mean_upload_s) {
      std::vector<double> snrs;
      snrs.reserve(run.observations.size());
      for (const auto& o : run.observations) snrs.push_back(o.link.uplink_snr_db);
      run.radio.throughput.efficiency =
          calibrate_efficiency(run.radio, snrs, cfg.occupancy.upload_volume_bytes,
                               cfg.occupancy.period_s, *cfg.calibrate_mean_upload_s);
      for (auto& o : run.observations) apply_throughput(o, run.radio, cfg.occupancy);
      run.calibrated = true;
    }
    const SarEntry& sar = cfg.sar.lookup(run.model.band.carrier_mhz(), cfg.occupancy.population,
                                         cfg.occupancy.usage, cfg.occupancy.posture);
    run.ei = aggregate_ei(run.observations, sar, run.model.band, cfg.occupancy);
    result.bands.push_back(std::move(run));
  }
  return result;
}

json report_to_json(const RunConfig& cfg, const SimulationResult& result) {
  json report;
  report["generator"] = {{"name", "expose-sim"}, {"version", kVersion}};
  report["config"] = run_config_to_json(cfg);
  report["seed"] = cfg.seed;
  json bands = json::array();
  for (const auto& run : result.bands) {
    const SarEntry& sar = cfg.sar.lookup(run.model.band.carrier_mhz(), cfg.occupancy.population,
                                         cfg.occupancy.usage, cfg.occupancy.posture);
    json band;
    band["band_mhz"] = run.model.band.carrier_mhz();
    band["bandwidth_hz"] = run.model.band.bandwidth_hz;
    band["model"] = {{"intercept_db", run.model.intercept_db},
                     {"breakpoint_m", run.model.exponent.breakpoint()},
                     {"near", distribution_to_json(run.model.exponent.near_model())},
                     {"far", distribution_to_json(run.model.exponent.far_model())}};
    // Constants chosen by calibration rather than taken from measurements.
    band["calibration"] = {
        {"throughput_efficiency", run.radio.throughput.efficiency},
        {"efficiency_calibrated", run.calibrated},
        {"target_mean_upload_s",
         cfg.calibrate_mean_upload_s ? json(*cfg.calibrate_mean_upload_s) : json(nullptr)},
        {"power_control_resource_blocks", run.radio.resource_blocks},
        {"allocated_rb", run.radio.throughput.allocated_rb},
        {"total_rb", run.radio.throughput.total_rb},
        {"max_throughput_bps", run.radio.throughput.max_bps}};
    band["sar"] = {{"sar_ul", sar.sar_ul}, {"sar_dl", sar.sar_dl}};
    json strata = json::array();
    for (const auto& s : run.ei.strata) strata.push_back(breakdown_json(s));
    band["strata"] = strata;
    band["overall"] = breakdown_json(run.ei.overall);
    band["uplink_share"] = run.ei.overall.ei > 0.0 ? run.ei.overall.ul_exposure / run.ei.overall.ei
                                                   : 0.0;
    band["warnings"] = run.ei.warnings;
    bands.push_back(band);
  }
  report["bands"] = bands;
  return report;
}

void write_report_csv(std::ostream& out, const SimulationResult& result, const RunConfig& cfg) {
  out << "band_mhz,stratum,fraction,n,p_tx_w,sar_ul,s_rx_inc_w,sar_dl,dl_exposure,"
         "ul_exposure,ei,ul_time_s\n";
  for (const auto& run : result.bands) {
    const SarEntry& sar = cfg.sar.lookup(run.model.band.carrier_mhz(), cfg.occupancy.population,
                                         cfg.occupancy.usage, cfg.occupancy.posture);
    auto row = [&](const EiBreakdown& b) {
      out << format_number(run.model.band.carrier_mhz()) << ',' << b.stratum << ','
          << format_number(b.fraction) << ',' << b.n_observations << ','
          << format_number(b.mean_tx_power_w) << ',' << format_number(sar.sar_ul) << ','
          << format_number(b.mean_received_power_w) << ',' << format_number(sar.sar_dl) << ','
          << format_number(b.dl_exposure) << ',' << format_number(b.ul_exposure) << ','
          << format_number(b.ei) << ',' << format_number(b.mean_ul_time_s) << '\n';
    };
    for (const auto& s : run.ei.strata) row(s);
    row(run.ei.overall);
  }
}

void write_observations_csv(std::ostream& out, std::span<const UserObservation> observations) {
  out << "x,y,z,env,d,gamma,penetration_db,pl_db,rsrp_dbm,ptx_dbm,snr_db,thr_bps,t_ul_s\n";
  for (const auto& o : observations) {
    out << format_number(o.position.x) << ',' << format_number(o.position.y) << ','
        << format_number(o.position.z) << ',' << to_string(o.environment) << ','
        << format_number(o.distance_m) << ',' << format_number(o.gamma) << ','
        << format_number(o.penetration_loss_db) << ',' << format_number(o.link.path_loss_db)
        << ',' << format_number(o.link.rsrp_dbm) << ','
        << format_number(o.link.uplink_tx_power_dbm) << ','
        << format_number(o.link.uplink_snr_db) << ',' << format_number(o.link.throughput_bps)
        << ',' << format_number(o.upload_time_s) << '\n';
  }
}

std::vector<std::filesystem::path> write_simulation_outputs(const RunConfig& cfg,
                                                            const SimulationResult& result,
                                                            const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (const auto& run : result.bands) {
    const std::string name = result.bands.size() == 1
                                 ? "observations.csv"
                                 : "observations_" + band_suffix(run) + ".csv";
    auto out = open_output(out_dir / name);
    write_observations_csv(out, run.observations);
    written.push_back(out_dir / name);
  }
  {
    auto out = open_output(out_dir / "ei_report.json");
    out << report_to_json(cfg, result).dump(2) << '\n';
    written.push_back(out_dir / "ei_report.json");
  }
  {
    auto out = open_output(out_dir / "ei_report.csv");
    write_report_csv(out, result, cfg);
    written.push_back(out_dir / "ei_report.csv");
  }
  return written;
}

std::vector<ObservationRow> read_observations_csv(std::istream& in) {
  static const std::vector<std::string> kColumns{
      "x", "y", "z", "env", "d", "gamma", "penetration_db", "pl_db",
      "rsrp_dbm", "ptx_dbm", "snr_db", "thr_bps", "t_ul_s"};
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header != kColumns) throw FormatError("unexpected observation dump header: " + line);

  std::vector<ObservationRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != kColumns.size()) {
      throw FormatError("observation dump line " + std::to_string(line_no) +
                        " has the wrong number of fields");
    }
    auto num = [&](std::size_t i) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cells[i], &used);
        if (used != cells[i].size()) throw std::invalid_argument(cells[i]);
        return v;
      } catch (const std::exception&) {
        throw FormatError("observation dump line " + std::to_string(line_no) + ": bad number '" +
                          cells[i] + "'");
      }
    };
    ObservationRow r;
    r.x = num(0);
    r.y = num(1);
    r.z = num(2);
    r.env = cells[3];
    r.distance_m = num(4);
    r.gamma = num(5);
    r.penetration_db = num(6);
    r.path_loss_db = num(7);
    r.rsrp_dbm = num(8);
    r.ptx_dbm = num(9);
    r.snr_db = num(10);
    r.throughput_bps = num(11);
    r.upload_time_s = num(12);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::vector<CdfPoint> out;
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out.push_back({values[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

std::vector<HistogramBin> histogram(std::span<const double> values, std::size_t bins) {
  if (values.empty() || bins == 0) return {};
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) return {HistogramBin{lo, hi, values.size()}};
  std::vector<HistogramBin> out(bins);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].lower = lo + width * static_cast<double>(b);
    out[b].upper = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
  }
  for (const double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    out[std::min(b, bins - 1)].count++;
  }
  return out;
}

std::vector<std::filesystem::path> write_plot_data(std::span<const ObservationRow> rows,
                                                   const std::filesystem::path& out_dir,
                                                   double breakpoint_m) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  auto write_cdf = [&](const char* name, const char* column, auto field) {
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto& r : rows) values.push_back(field(r));
    auto out = open_output(out_dir / name);
    out << column << ",cdf\n";
    for (const auto& p : empirical_cdf(std::move(values))) {
      out << format_number(p.value) << ',' << format_number(p.probability) << '\n';
    }
    written.push_back(out_dir / name);
  };
  write_cdf("rsrp_cdf.csv", "rsrp_dbm", [](const ObservationRow& r) { return r.rsrp_dbm; });
  write_cdf("ptx_cdf.csv", "ptx_dbm", [](const ObservationRow& r) { return r.ptx_dbm; });

  {
    auto out = open_output(out_dir / "gamma_vs_distance.csv");
    out << "d,gamma,env\n";
    for (const auto& r : rows) {
      out << format_number(r.distance_m) << ',' << format_number(r.gamma) << ',' << r.env << '\n';
    }
    written.push_back(out_dir / "gamma_vs_distance.csv");
  }

  auto write_hist = [&](const char* name, bool near) {
    std::vector<double> gammas;
    for (const auto& r : rows) {
      if ((r.distance_m < breakpoint_m) == near) gammas.push_back(r.gamma);
    }
    auto out = open_output(out_dir / name);
    out << "lower,upper,count\n";
    for (const auto& b : histogram(gammas, 50)) {
      out << format_number(b.lower) << ',' << format_number(b.upper) << ',' << b.count << '\n';
    }
    written.push_back(out_dir / name);
  };
  write_hist("gamma_hist_near.csv", true);
  write_hist("gamma_hist_far.csv", false);
  return written;
}

}  // namespace exposim
