// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "exposim/exposure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "exposim/error.hpp"
#include "exposim/link_budget.hpp"

namespace exposim {

SarTable::SarTable(std::vector<SarEntry> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (!(e.sar_ul > 0.0 && e.sar_dl > 0.0)) {
      throw DomainError("SAR values must be positive");
    }
    if (!(e.reference_tx_power_w > 0.0 && e.reference_incident > 0.0)) {
      throw DomainError("SAR reference levels must be positive");
    }
  }
}

SarTable SarTable::defaults() {
  // Whole-body adult values for data usage, standing.
  return SarTable({
      SarEntry{1800.0, "adult", "data", "standing", 0.0039, 0.0047, 1.0, 1.0},
      SarEntry{2600.0, "adult", "data", "standing", 0.0029, 0.0042, 1.0, 1.0},
  });
}

const SarEntry& SarTable::lookup(double band_mhz, const std::string& population,
                                 const std::string& usage, const std::string& posture) const {
  for (const auto& e : entries_) {
    if (std::abs(e.band_mhz - band_mhz) < 0.5 && e.population == population &&
        e.usage == usage && e.posture == posture) {
      return e;
    }
  }
  throw DomainError("no SAR entry for " + std::to_string(band_mhz) + " MHz, " + population +
                    "/" + usage + "/" + posture);
}

double uplink_dose(const SarEntry& sar, double mean_ul_time_s, double period_s,
                   double mean_tx_power_w) {
  if (!(period_s > 0.0)) throw DomainError("period must be positive");
  if (mean_ul_time_s < 0.0 || mean_ul_time_s > period_s) {
    throw DomainError("upload time must lie within the period");
  }
  return (mean_ul_time_s / period_s) * sar.sar_ul * mean_tx_power_w / sar.reference_tx_power_w;
}

double downlink_dose(const SarEntry& sar, double mean_received_power_w,
                     const FrequencyBand& band, double period_fraction) {
  if (mean_received_power_w < 0.0 || period_fraction < 0.0) {
    throw DomainError("downlink dose inputs must be non-negative");
  }
  return period_fraction * sar.sar_dl * incident_power_density(mean_received_power_w, band) /
         sar.reference_incident;
}

StratumSpec StratumSpec::by_environment() {
  return StratumSpec{{"outdoor", "indoor"}, [](const UserObservation& obs) {
                       return std::string(to_string(obs.environment));
                     }};
}

StratumSpec StratumSpec::pooled() {
  return StratumSpec{{"all"}, [](const UserObservation&) { return std::string("all"); }};
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (const double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

EiBreakdown breakdown(const std::string& label, std::span<const UserObservation* const> obs,
                      const SarEntry& sar, const FrequencyBand& band,
                      const OccupancyProfile& occ) {
  std::vector<double> tx_power;
  std::vector<double> time;
  std::vector<double> received;
  tx_power.reserve(obs.size());
  time.reserve(obs.size());
  received.reserve(obs.size());
  for (const auto* o : obs) {
    const double p = dbm_to_watts(o->link.uplink_tx_power_dbm);
    tx_power.push_back(p);
    time.push_back(o->upload_time_s);
    received.push_back(o->link.received_power_w);
  }
  const double n = static_cast<double>(obs.size());

  EiBreakdown b;
  b.stratum = label;
  b.n_observations = obs.size();
  b.mean_ul_time_s = pairwise_sum(time) / n;
  // Each handset holds one power for its whole upload, so its active-period
  // mean is that power; the duty cycle enters through mean_ul_time_s alone.
  b.mean_tx_power_w = pairwise_sum(tx_power) / n;
  b.mean_received_power_w = pairwise_sum(received) / n;
  b.dl_time_s = occ.period_s;
  b.ul_exposure = uplink_dose(sar, b.mean_ul_time_s, occ.period_s, b.mean_tx_power_w);
  b.dl_exposure = downlink_dose(sar, b.mean_received_power_w, band, 1.0);
  b.ei = b.ul_exposure + b.dl_exposure;
  return b;
}

}  // namespace

EiReport aggregate_ei(std::span<const UserObservation> observations, const SarEntry& sar,
                      const FrequencyBand& band, const OccupancyProfile& occ,
                      const StratumSpec& strata) {
  if (observations.empty()) throw DomainError("no observations to aggregate");

  std::map<std::string, std::vector<const UserObservation*>> members;
  for (const auto& label : strata.labels) members[label];
  for (const auto& obs : observations) {
    const std::string label = strata.classify(obs);
    auto it = members.find(label);
    if (it == members.end()) throw DomainError("observation in undeclared stratum " + label);
    it->second.push_back(&obs);
  }

  EiReport report;
  std::vector<const UserObservation*> all;
  all.reserve(observations.size());
  for (const auto& obs : observations) all.push_back(&obs);
  report.overall = breakdown("overall", all, sar, band, occ);
  report.overall.fraction = 1.0;

  const double total = static_cast<double>(observations.size());
  double ul = 0.0;
  double dl = 0.0;
  for (const auto& label : strata.labels) {
    const auto& group = members[label];
    if (group.empty()) {
      report.warnings.push_back("stratum '" + label + "' is empty and was excluded");
      continue;
    }
    EiBreakdown b = breakdown(label, group, sar, band, occ);
    b.fraction = static_cast<double>(group.size()) / total;
    ul += b.fraction * b.ul_exposure;
    dl += b.fraction * b.dl_exposure;
    report.strata.push_back(std::move(b));
  }
  // The overall index is the fraction-weighted sum over strata; the pooled
  // means above are kept for display.
  report.overall.ul_exposure = ul;
  report.overall.dl_exposure = dl;
  report.overall.ei = ul + dl;
  return report;
}

}  // namespace exposim
