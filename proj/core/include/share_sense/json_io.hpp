#pragma once

#include <optional>
#include <string>

#include "share_sense/duality.hpp"
#include "share_sense/experiment_harness.hpp"
#include "share_sense/lp_core.hpp"
#include "share_sense/sensitivity_bounds.hpp"

namespace share_sense {

/// Instance file:
///   {"p": int, "n0": int, "b": [real],
///    "agents": [{"c": [real], "d": [real | "inf"], "A": [[real; n]; p]}]}
/// Throws Error(kInvalidInput) on malformed documents.
SharingProblem parse_instance(const std::string& text);
std::string instance_to_json(const SharingProblem& problem);

/// Solution dump: x, objective, partition index sets, flags and, when given,
/// the dual certificate and the sensitivity interval.
std::string solution_to_json(const PrimalSolution& solution, const std::optional<DualCertificate>& dual,
                             const std::optional<SensitivityInterval>& interval = std::nullopt,
                             std::optional<double> beta = std::nullopt);

/// Campaign configuration; see README for the field list.
CargoConfig parse_cargo_config(const std::string& text);
std::string cargo_config_to_json(const CargoConfig& config);

std::string summary_to_json(const CargoConfig& config, const CampaignSummary& summary);

/// {"error": code, "message": what}
std::string error_to_json(const std::string& code, const std::string& message);

}  // namespace share_sense
