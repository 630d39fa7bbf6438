// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "exposim/model_io.hpp"

#include <fstream>
#include <type_traits>
#include <variant>
#include <string>

#include "exposim/error.hpp"

namespace exposim {

using nlohmann::json;

namespace {

double number_at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
    throw FormatError(std::string("missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

}  // namespace

PathLossModel ModelFile::path_loss_model() const {
  return PathLossModel::make(intercept_db, exponent);
}

json distribution_to_json(const PleDistribution& dist) {
  json j;
  j["kind"] = std::string(to_string(dist.kind()));
  std::visit(
      [&j](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GevParams>) {
          j["shape"] = p.shape;
          j["scale"] = p.scale;
          j["location"] = p.location;
        } else if constexpr (std::is_same_v<T, ScaledBetaParams>) {
          j["alpha1"] = p.alpha1;
          j["alpha2"] = p.alpha2;
          j["lower"] = p.lower;
          j["upper"] = p.upper;
        } else if constexpr (std::is_same_v<T, UniformParams>) {
          j["lower"] = p.lower;
          j["upper"] = p.upper;
        } else {
          j["value"] = p.value;
        }
      },
      dist.params());
  return j;
}

PleDistribution distribution_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw FormatError("distribution needs a string 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gev") {
    return PleDistribution::gev(number_at(j, "shape"), number_at(j, "scale"),
                                number_at(j, "location"));
  }
  if (kind == "scaled_beta" || kind == "beta") {
    return PleDistribution::scaled_beta(number_at(j, "alpha1"), number_at(j, "alpha2"),
                                        number_at(j, "lower"), number_at(j, "upper"));
  }
  if (kind == "uniform") {
    return PleDistribution::uniform(number_at(j, "lower"), number_at(j, "upper"));
  }
  if (kind == "fixed") return PleDistribution::fixed(number_at(j, "value"));
  throw FormatError("unknown distribution kind '" + kind + "'");
}

json model_to_json(const ModelFile& model) {
  json j;
  j["format"] = kModelFormat;
  j["band"] = {{"carrier_hz", model.band.carrier_hz},
               {"bandwidth_hz", model.band.bandwidth_hz}};
  j["intercept_db"] = model.intercept_db;
  j["reference_distance_m"] = kReferenceDistance;
  j["breakpoint_m"] = model.exponent.breakpoint();
  j["near"] = distribution_to_json(model.exponent.near_model());
  j["far"] = distribution_to_json(model.exponent.far_model());
  j["provenance"] = model.provenance;
  return j;
}

ModelFile model_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("model file must be a JSON object");
  if (j.contains("format") && j.at("format") != kModelFormat) {
    throw FormatError("unsupported model format " + j.at("format").dump());
  }
  if (!j.contains("band")) throw FormatError("model file lacks 'band'");
  const FrequencyBand band =
      FrequencyBand::make(number_at(j.at("band"), "carrier_hz"),
                          number_at(j.at("band"), "bandwidth_hz"));
  if (j.contains("reference_distance_m") &&
      number_at(j, "reference_distance_m") != kReferenceDistance) {
    throw FormatError("only a 1 m reference distance is supported");
  }
  if (!j.contains("near") || !j.contains("far")) {
    throw FormatError("model file needs 'near' and 'far' distributions");
  }
  const double breakpoint =
      j.contains("breakpoint_m") ? number_at(j, "breakpoint_m") : kDefaultBreakpoint;
  ModelFile model{band, number_at(j, "intercept_db"),
                  BandedPleDistribution(distribution_from_json(j.at("near")),
                                        distribution_from_json(j.at("far")), breakpoint),
                  j.value("provenance", json::object())};
  if (!(model.intercept_db > 0.0)) throw DomainError("intercept must be positive");
  return model;
}

void write_model_file(const std::filesystem::path& path, const ModelFile& model) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write model file " + path.string());
  out << model_to_json(model).dump(2) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

ModelFile read_model_file(const std::filesystem::path& path) {
  try {
    return model_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace exposim
