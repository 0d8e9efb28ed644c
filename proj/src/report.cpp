// Copyright 2026 The qshutter authors
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

#include "qshutter/report.hpp"

#include <cmath>
#include <cstdio>

#include "qshutter/oracle.hpp"

namespace qshutter {

namespace {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

Claim equals_claim(const std::string& name, double expected, double observed,
                   double tolerance) {
  return {name, expected, observed, std::abs(observed - expected) < tolerance};
}

// Expected exactly zero; passes when the observation is below `tolerance`.
Claim zero_claim(const std::string& name, double observed, double tolerance) {
  return {name, 0.0, observed, std::abs(observed) < tolerance};
}

// Expected strictly positive; the pass floor keeps noise out.
Claim positive_claim(const std::string& name, double floor, double observed) {
  return {name, "> 0", observed, observed > floor};
}

// The paper-facing statements each scenario is expected to satisfy.
void evaluate_claims(const ScenarioConfig& config,
                     const std::vector<Complex>& input, RunReport& report) {
  const ScenarioResult& result = *report.result;
  const double tol = config.tolerance;
  const int n = config.slit_count;
  auto& claims = report.claims;

  switch (config.scenario) {
    case ScenarioKind::Single: {
      claims.push_back(
          zero_claim("zero-transmission", result.transmitted_probability, tol));
      SparseState expected = reflect_all_photons(
          build_photon_state(PhotonAmplitudes{input}, 2), 1);
      claims.push_back(equals_claim(
          "reflected-state-fidelity", 1.0,
          fidelity(expected, result.conditional_photon_state), tol));
      const double constant = 1.0 / ((2.0 * n - 1) * (2.0 * n - 1));
      claims.push_back(equals_claim("success-probability", constant,
                                    result.success_probability, tol));
      break;
    }
    case ScenarioKind::Dual: {
      SparseState expected =
          build_photon_state(PhotonAmplitudes{input}, n + 1);
      claims.push_back(equals_claim(
          "undistorted-passage", 1.0,
          fidelity(expected, result.conditional_photon_state), tol));
      claims.push_back(equals_claim("full-transmission", 1.0,
                                    result.transmitted_probability, tol));
      break;
    }
    case ScenarioKind::Correlated: {
      claims.push_back(
          zero_claim("zero-transmission", result.transmitted_probability, tol));
      SparseState expected = reflect_all_photons(
          build_correlated_photons(PhotonAmplitudes{input},
                                   config.photon_count, 2),
          1);
      claims.push_back(equals_claim(
          "bunched-reflection-fidelity", 1.0,
          fidelity(expected, result.conditional_photon_state), tol));
      break;
    }
    case ScenarioKind::Leak: {
      claims.push_back(positive_claim(
          "leak-positive", 1e-6, result.leak->conditional_both_transmitted));
      const double expected_overlap =
          1.0 / std::sqrt((2.0 * n - 1) * (2.0 * n - 3));
      claims.push_back(equals_claim("residual-overlap-magnitude",
                                    expected_overlap,
                                    std::abs(result.leak->residual_overlap),
                                    tol));
      break;
    }
    case ScenarioKind::Cascade: {
      claims.push_back(
          zero_claim("cascade-closure", result.transmitted_probability, tol));
      break;
    }
  }
}

void cross_check_oracle(const ScenarioConfig& config,
                        const std::vector<Complex>& input, RunReport& report) {
  oracle::DenseResult dense;
  switch (config.scenario) {
    case ScenarioKind::Single:
      dense = oracle::dense_single(config.slit_count, input);
      break;
    case ScenarioKind::Dual:
      dense = oracle::dense_dual(config.slit_count, input);
      break;
    case ScenarioKind::Correlated:
      dense = oracle::dense_correlated(config.slit_count, config.photon_count,
                                       input);
      break;
    case ScenarioKind::Leak:
      dense = oracle::dense_leak(config.slit_count, config.slit_j,
                                 config.slit_k);
      break;
    case ScenarioKind::Cascade:
      dense = oracle::dense_cascade(config.slit_count, config.photon_count,
                                    input);
      break;
  }
  ScenarioResult& result = *report.result;
  result.oracle_checked = true;
  result.oracle_max_deviation = oracle::max_deviation(result, dense);
  report.claims.push_back(zero_claim("oracle-agreement",
                                     result.oracle_max_deviation,
                                     kOracleAgreementTolerance));
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& raw) {
  const ScenarioConfig config = raw.normalized();
  config.validate();

  RunReport report;
  report.config = config;
  const std::vector<Complex> input = config.resolve_input_coefficients();

  try {
    switch (config.scenario) {
      case ScenarioKind::Single:
        report.result =
            run_single_shutter(config.slit_count, PhotonAmplitudes{input});
        break;
      case ScenarioKind::Dual:
        report.result = run_dual(config.slit_count, PhotonAmplitudes{input});
        break;
      case ScenarioKind::Correlated:
        report.result = run_correlated(config.slit_count, config.photon_count,
                                       PhotonAmplitudes{input});
        break;
      case ScenarioKind::Leak:
        report.result = run_two_photon_leak(config.slit_count, config.slit_j,
                                            config.slit_k);
        break;
      case ScenarioKind::Cascade: {
        const SparseState photons = build_general_photons(
            input, config.slit_count, config.photon_count,
            /*first_photon_id=*/1, /*stage_count=*/config.photon_count);
        report.result =
            run_cascade(config.slit_count, config.photon_count, photons);
        break;
      }
    }
  } catch (const PostSelectionImpossible& failure) {
    report.status = kStatusPostSelectionImpossible;
    report.error = failure.what();
    report.failed_stage = failure.stage();
    return report;
  }

  evaluate_claims(config, input, report);
  if (config.oracle) cross_check_oracle(config, input, report);

  for (const Claim& claim : report.claims)
    if (!claim.pass) report.status = kStatusClaimFailed;
  return report;
}

nlohmann::ordered_json report_json(const RunReport& report) {
  nlohmann::ordered_json out;
  out["scenario"] = to_string(report.config.scenario);
  out["N"] = report.config.slit_count;
  out["K"] = report.config.photon_count;
  out["seed"] = report.config.seed;

  if (report.status == kStatusPostSelectionImpossible) {
    out["error"] = report.error;
    out["failed_stage"] = report.failed_stage;
    out["status"] = report.status;
    return out;
  }

  const ScenarioResult& result = *report.result;
  out["success_probability"] = result.success_probability;
  out["transmitted_probability"] = result.transmitted_probability;
  out["all_transmitted_probability"] = result.all_transmitted_probability;
  out["reflected_probability"] = result.reflected_probability;
  out["mixed_probability"] = result.mixed_probability;
  out["per_stage_probabilities"] = result.per_stage_probabilities;

  auto conditional = nlohmann::ordered_json::array();
  for (const auto& [basis, value] :
       result.conditional_photon_state.sorted_terms()) {
    nlohmann::ordered_json term;
    std::string label;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (i > 0) label += ",";
      label += label_text(basis[i]);
    }
    term["label"] = label;
    term["re"] = value.real();
    term["im"] = value.imag();
    conditional.push_back(term);
  }
  out["conditional_state"] = conditional;

  if (result.leak) {
    nlohmann::ordered_json leak;
    leak["conditional_both_transmitted"] =
        result.leak->conditional_both_transmitted;
    leak["unconditional_both_transmitted"] =
        result.leak->unconditional_both_transmitted;
    leak["undisturbed_weight"] = result.leak->undisturbed_weight;
    leak["residual_overlap"] = nlohmann::ordered_json::array(
        {result.leak->residual_overlap.real(),
         result.leak->residual_overlap.imag()});
    out["leak"] = leak;
  }

  out["oracle_checked"] = result.oracle_checked;
  if (result.oracle_checked)
    out["oracle_max_deviation"] = result.oracle_max_deviation;
  else
    out["oracle_max_deviation"] = nullptr;

  auto claims = nlohmann::ordered_json::array();
  for (const Claim& claim : report.claims) {
    nlohmann::ordered_json entry;
    entry["name"] = claim.name;
    entry["expected"] = claim.expected;
    entry["observed"] = claim.observed;
    entry["pass"] = claim.pass;
    claims.push_back(entry);
  }
  out["claims"] = claims;
  out["status"] = report.status;
  return out;
}

std::string report_text(const RunReport& report) {
  std::string out;
  out += "scenario " + to_string(report.config.scenario) +
         "  N=" + std::to_string(report.config.slit_count) +
         "  K=" + std::to_string(report.config.photon_count) +
         "  seed=" + std::to_string(report.config.seed) + "\n";

  if (report.status == kStatusPostSelectionImpossible) {
    out += "post-selection impossible at stage " +
           std::to_string(report.failed_stage) + ": " + report.error + "\n";
    return out;
  }

  const ScenarioResult& result = *report.result;
  out += "success_probability      " +
         format_double(result.success_probability) + "\n";
  out += "transmitted_probability  " +
         format_double(result.transmitted_probability) + "\n";
  out += "all_transmitted          " +
         format_double(result.all_transmitted_probability) + "\n";
  out += "reflected_probability    " +
         format_double(result.reflected_probability) + "\n";
  out += "mixed_probability        " + format_double(result.mixed_probability) +
         "\n";
  out += "per_stage_probabilities ";
  for (double p : result.per_stage_probabilities) out += " " + format_double(p);
  out += "\n";
  if (result.leak) {
    out += "leak conditional_both_transmitted " +
           format_double(result.leak->conditional_both_transmitted) + "\n";
    out += "leak unconditional_both_transmitted " +
           format_double(result.leak->unconditional_both_transmitted) + "\n";
    out += "leak undisturbed_weight " +
           format_double(result.leak->undisturbed_weight) + "\n";
    out += "leak residual_overlap " +
           format_double(result.leak->residual_overlap.real()) + " " +
           format_double(result.leak->residual_overlap.imag()) + "\n";
  }
  if (result.oracle_checked)
    out += "oracle_max_deviation     " +
           format_double(result.oracle_max_deviation) + "\n";
  out += "conditional_state:\n" + to_text(result.conditional_photon_state);
  for (const Claim& claim : report.claims) {
    out += "claim " + claim.name + ": expected " + claim.expected.dump() +
           " observed " + format_double(claim.observed) +
           (claim.pass ? "  PASS" : "  FAIL") + "\n";
  }
  return out;
}

}  // namespace qshutter
