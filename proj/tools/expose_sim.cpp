// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0
//
// expose-sim: fit path-loss models from drive tests, simulate the street
// scenario and export plot data.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "exposim/config.hpp"
#include "exposim/error.hpp"
#include "exposim/ingest.hpp"
#include "exposim/model_io.hpp"
#include "exposim/workflow.hpp"

namespace fs = std::filesystem;
using namespace exposim;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kDataError = 2, kNumericError = 3 };

struct FitArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> tools;
  std::vector<std::string> schemas;
  double band_mhz = 0.0;
  std::string out;
  double sc_lat = SynthesisSpec{}.sc_position.latitude;
  double sc_lon = SynthesisSpec{}.sc_position.longitude;
  double sc_gain_db = 0.0;
  double breakpoint_m = kDefaultBreakpoint;
  std::vector<double> far_support;
  std::string normalized_out;
};

struct SimulateArgs {
  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::size_t> n_observations;
};

struct ReportArgs {
  std::string obs;
  std::string out_dir;
  double breakpoint_m = kDefaultBreakpoint;
};

struct SynthArgs {
  std::string model;
  std::string out;
  std::size_t n = 20000;
  std::uint64_t seed = 1;
  std::string tool = "synthetic";
  double d_min = 2.0;
  double d_max = 200.0;
};

ToolSchema load_schema(const std::string& path) {
  const nlohmann::json j = read_json_file(path);
  ToolSchema schema;
  try {
    schema.tool = j.value("tool", std::string("unknown"));
    if (j.contains("band_mhz")) schema.band_mhz = j.at("band_mhz").get<double>();
    if (j.contains("columns")) {
      for (const auto& [key, header] : j.at("columns").items()) {
        schema.columns[canonical_key(key)] = header.get<std::string>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  return schema;
}

void print_rejections(const std::map<std::string, std::size_t>& rejections) {
  for (const auto& [reason, count] : rejections) {
    std::cerr << "  rejected " << count << " (" << reason << ")\n";
  }
}

void print_distribution(const char* label, const FitReport& r) {
  const nlohmann::json d = distribution_to_json(r.candidate);
  std::printf("  %-5s %-12s", label, d.at("kind").get<std::string>().c_str());
  for (const auto& [key, value] : d.items()) {
    if (key == "kind") continue;
    std::printf(" %s=%.4g", key.c_str(), value.get<double>());
  }
  std::printf("  n=%zu KS D=%.4f p=%.3g\n", r.n_points, r.ks_statistic, r.ks_p_value);
}

int run_fit(const FitArgs& args) {
  if (!args.tools.empty() && args.tools.size() != 1 && args.tools.size() != args.inputs.size()) {
    throw CLI::ValidationError("--tool", "give one tag, or one per --in");
  }
  if (!args.schemas.empty() && args.schemas.size() != 1 &&
      args.schemas.size() != args.inputs.size()) {
    throw CLI::ValidationError("--schema", "give one schema, or one per --in");
  }
  std::vector<DriveTestRecord> records;
  for (std::size_t i = 0; i < args.inputs.size(); ++i) {
    ToolSchema schema = args.schemas.empty()
                            ? ToolSchema::canonical("unknown")
                            : load_schema(args.schemas[args.schemas.size() == 1 ? 0 : i]);
    if (!args.tools.empty()) schema.tool = args.tools[args.tools.size() == 1 ? 0 : i];
    if (!schema.band_mhz) schema.band_mhz = args.band_mhz;
    std::ifstream in(args.inputs[i]);
    if (!in) throw FormatError("cannot read " + args.inputs[i]);
    ParseResult parsed = parse_drive_test(in, schema);
    std::cerr << args.inputs[i] << ": " << parsed.records.size() << " of " << parsed.rows
              << " rows accepted\n";
    print_rejections(parsed.rejections);
    records.insert(records.end(), parsed.records.begin(), parsed.records.end());
  }
  if (!args.normalized_out.empty()) {
    std::ofstream out(args.normalized_out);
    if (!out) throw FormatError("cannot write " + args.normalized_out);
    write_normalized_csv(out, records);
  }

  ModelFitRequest request;
  request.band = FrequencyBand::from_mhz(args.band_mhz);
  request.sc_position = {args.sc_lat, args.sc_lon};
  request.sc_gain_db = args.sc_gain_db;
  request.breakpoint_m = args.breakpoint_m;
  if (args.far_support.size() == 2) {
    request.far_options.beta_support = std::pair{args.far_support[0], args.far_support[1]};
  }
  const ModelFitResult fit = fit_model(records, request);
  write_model_file(args.out, fit.model);

  std::printf("Path-loss regression, %g MHz\n", request.band.carrier_mhz());
  std::printf("  %-18s %8s %10s %12s %10s %8s\n", "fit", "gamma", "A [dB]", "mean diff", "std",
              "n");
  for (const auto& [name, r] : {std::pair{"A = free space", fit.regression},
                                std::pair{"A free", fit.regression_free}}) {
    std::printf("  %-18s %8.3f %10.2f %12.3f %10.3f %8zu\n", name, r.gamma, r.intercept_db,
                r.mean_residual_db, r.residual_std_db, r.n_points);
  }
  std::printf("Exponent distributions (breakpoint %g m)\n", request.breakpoint_m);
  print_distribution("near", fit.near_fit);
  print_distribution("far", fit.far_fit);
  std::printf("Samples per tool:");
  for (const auto& [tool, n] : fit.samples_per_tool) std::printf(" %s=%zu", tool.c_str(), n);
  std::printf("\n");
  if (!fit.rejections.empty()) {
    std::cerr << "conversion:\n";
    print_rejections(fit.rejections);
  }
  if (fit.implausible > 0) {
    std::cerr << "warning: " << fit.implausible << " samples with non-positive path loss\n";
  }
  std::printf("wrote %s\n", args.out.c_str());
  return kOk;
}

int run_simulate(const SimulateArgs& args) {
  RunConfig cfg = load_run_config(args.config);
  if (const auto env = seed_from_environment()) cfg.seed = *env;
  if (args.seed) cfg.seed = *args.seed;
  if (args.workers) cfg.worker_count = *args.workers;
  if (args.n_observations) cfg.n_observations = *args.n_observations;
  const SimulationResult result = simulate(cfg);
  const auto written = write_simulation_outputs(cfg, result, args.out_dir);
  for (const auto& run : result.bands) {
    std::printf("%g MHz: EI %.3e W/kg (UL %.3e, DL %.3e), efficiency %.4g\n",
                run.model.band.carrier_mhz(), run.ei.overall.ei, run.ei.overall.ul_exposure,
                run.ei.overall.dl_exposure, run.radio.throughput.efficiency);
    for (const auto& s : run.ei.strata) {
      std::printf("  %-8s f=%.3f n=%zu EI %.3e\n", s.stratum.c_str(), s.fraction,
                  s.n_observations, s.ei);
    }
    for (const auto& w : run.ei.warnings) std::cerr << "warning: " << w << '\n';
  }
  for (const auto& p : written) std::printf("wrote %s\n", p.string().c_str());
  return kOk;
}

int run_report(const ReportArgs& args) {
  std::ifstream in(args.obs);
  if (!in) throw FormatError("cannot read " + args.obs);
  const std::vector<ObservationRow> rows = read_observations_csv(in);
  if (rows.empty()) std::cerr << "warning: " << args.obs << " holds no observations\n";
  for (const auto& p : write_plot_data(rows, args.out_dir, args.breakpoint_m)) {
    std::printf("wrote %s\n", p.string().c_str());
  }
  return kOk;
}

int run_synth(const SynthArgs& args) {
  const ModelFile model = read_model_file(args.model);
  SynthesisSpec spec;
  spec.n_points = args.n;
  spec.seed = args.seed;
  spec.tool = args.tool;
  spec.min_distance_m = args.d_min;
  spec.max_distance_m = args.d_max;
  const auto records =
      synthesize_drive_test(model.path_loss_model(), RadioConfig::for_band(model.band), spec);
  std::ofstream out(args.out);
  if (!out) throw FormatError("cannot write " + args.out);
  write_normalized_csv(out, records);
  std::printf("wrote %zu records to %s\n", records.size(), args.out.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small-cell EMF exposure simulator"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a path-loss model from drive-test CSVs");
  fit_cmd->add_option("--in", fit.inputs, "Drive-test CSV files")->required()->check(
      CLI::ExistingFile);
  fit_cmd->add_option("--tool", fit.tools, "Tool tag, one for all inputs or one per input");
  fit_cmd->add_option("--schema", fit.schemas, "Column-mapping JSON per tool")
      ->check(CLI::ExistingFile);
  fit_cmd->add_option("--band", fit.band_mhz, "Carrier frequency in MHz")->required();
  fit_cmd->add_option("--out", fit.out, "Output model file")->required();
  fit_cmd->add_option("--sc-lat", fit.sc_lat, "Small-cell latitude")->capture_default_str();
  fit_cmd->add_option("--sc-lon", fit.sc_lon, "Small-cell longitude")->capture_default_str();
  fit_cmd->add_option("--sc-gain", fit.sc_gain_db, "Small-cell antenna gain in dB");
  fit_cmd->add_option("--breakpoint", fit.breakpoint_m, "Near/far split in m")
      ->capture_default_str();
  fit_cmd->add_option("--far-support", fit.far_support, "Fixed support a b for the far beta")
      ->expected(2);
  fit_cmd->add_option("--normalized-out", fit.normalized_out,
                      "Also write the merged records as normalized CSV");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the scenario Monte Carlo");
  sim_cmd->add_option("--config", sim.config, "Run configuration JSON")
      ->required()
      ->check(CLI::ExistingFile);
  sim_cmd->add_option("--out-dir", sim.out_dir, "Output directory")->required();
  sim_cmd->add_option("--seed", sim.seed, "Seed (overrides config and EXPOSE_SIM_SEED)");
  sim_cmd->add_option("--workers", sim.workers, "Worker threads")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--observations", sim.n_observations, "Number of observations")
      ->check(CLI::PositiveNumber);

  ReportArgs rep;
  auto* rep_cmd = app.add_subcommand("report", "Export plot data from an observation dump");
  rep_cmd->add_option("--obs", rep.obs, "Observation CSV")->required()->check(CLI::ExistingFile);
  rep_cmd->add_option("--out-dir", rep.out_dir, "Output directory")->required();
  rep_cmd->add_option("--breakpoint", rep.breakpoint_m, "Near/far split in m")
      ->capture_default_str();

  SynthArgs syn;
  auto* syn_cmd = app.add_subcommand("synth", "Generate a synthetic drive test from a model");
  syn_cmd->add_option("--model", syn.model, "Model file")->required()->check(CLI::ExistingFile);
  syn_cmd->add_option("--out", syn.out, "Output CSV")->required();
  syn_cmd->add_option("-n,--points", syn.n, "Number of records")->capture_default_str();
  syn_cmd->add_option("--seed", syn.seed, "Seed")->capture_default_str();
  syn_cmd->add_option("--tool", syn.tool, "Tool tag")->capture_default_str();
  syn_cmd->add_option("--d-min", syn.d_min, "Minimum distance in m")->capture_default_str();
  syn_cmd->add_option("--d-max", syn.d_max, "Maximum distance in m")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*fit_cmd) return run_fit(fit);
    if (*sim_cmd) return run_simulate(sim);
    if (*rep_cmd) return run_report(rep);
    if (*syn_cmd) return run_synth(syn);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FitError& e) {
    std::cerr << "error: fit failed: " << e.what() << '\n';
    return kNumericError;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const EmptyInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericError;
  }
  return kUsage;
}
