// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPOSIM_MODEL_IO_HPP_
#define EXPOSIM_MODEL_IO_HPP_

#include <filesystem>

#include "json.hpp"

#include "exposim/distributions.hpp"
#include "exposim/path_loss.hpp"

namespace exposim {

inline constexpr const char* kModelFormat = "expose-sim-model/1";

// A fitted (or hand-entered) statistical path-loss model for one band.
struct ModelFile {
  FrequencyBand band;
  double intercept_db = 0.0;
  BandedPleDistribution exponent;
  // Free-form fit provenance: sample counts, KS results, regression summary.
  nlohmann::json provenance = nlohmann::json::object();

  PathLossModel path_loss_model() const;
};

nlohmann::json distribution_to_json(const PleDistribution& dist);

/// Throws FormatError on unknown kinds or missing fields, DomainError on
/// parameters outside the family's domain.
PleDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const ModelFile& model);
ModelFile model_from_json(const nlohmann::json& j);

void write_model_file(const std::filesystem::path& path, const ModelFile& model);
ModelFile read_model_file(const std::filesystem::path& path);

/// Parses a file as JSON, turning I/O and syntax errors into FormatError.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace exposim

#endif  // EXPOSIM_MODEL_IO_HPP_
