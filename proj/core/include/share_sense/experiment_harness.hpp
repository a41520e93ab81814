#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "share_sense/lp_core.hpp"
#include "share_sense/rng.hpp"
#include "share_sense/sensitivity_bounds.hpp"

namespace share_sense {

enum class DemandShape { kUniform, kTruncatedGaussian };

/// Cargo-loading campaign: m shipments per trial, each with a price per kg,
/// a density and a demanded quantity; the aircraft limits weight (kg) and
/// volume (m^3). Weight and volume capacities have no default.
struct CargoConfig {
    int m{100};
    int trials{100};
    std::optional<std::int64_t> arrivals;  // defaults to 50 m
    double beta{1e-7};
    double p_min{20.0};
    double p_max{60.0};
    double rho_min{900.0};
    double rho_max{7000.0};
    DemandShape demand{DemandShape::kUniform};
    double d_min{0.0};
    double d_max{0.0};
    double mu{0.0};
    double sigma2{0.0};
    double weight_capacity{0.0};
    double volume_capacity{0.0};
    std::uint64_t seed{0};
    // Every audit_stride-th arrival is also re-solved (0 disables).
    std::int64_t audit_stride{100};

    std::int64_t arrival_count() const { return arrivals.value_or(50 * static_cast<std::int64_t>(m)); }
    /// Throws Error(kInvalidInput) naming the first bad field.
    void validate() const;
};

struct TrialFlags {
    bool degenerate{false};
    bool non_unique{false};
    bool rank_deficient{false};
    bool count_mismatch{false};  // primal and dual active counts differ

    bool clean() const { return !degenerate && !non_unique && !rank_deficient && !count_mismatch; }
};

struct TrialRecord {
    int trial_index{0};
    int s_star{0};
    int s_star_dual{0};
    std::optional<double> p_hat;  // absent for discarded trials
    double eps_low{0.0};
    double eps_high{1.0};
    std::int64_t tie_count{0};
    std::int64_t audited{0};
    std::int64_t audit_mismatches{0};
    TrialFlags flags;

    bool clean() const { return flags.clean() && p_hat.has_value(); }
    bool inside_band() const { return clean() && *p_hat >= eps_low && *p_hat <= eps_high; }
};

struct CampaignSummary {
    int total{0};
    int clean{0};
    int inside_band{0};
    int discarded{0};
    std::int64_t ties{0};
    std::int64_t audited{0};
    std::int64_t audit_mismatches{0};
};

struct CampaignResult {
    std::vector<TrialRecord> records;
    CampaignSummary summary;
};

AgentProfile sample_cargo_agent(const CargoConfig& config, StreamRng& rng);

/// Two inequality budget rows (weight, volume) over the given shipments.
SharingProblem cargo_problem(const CargoConfig& config, std::vector<AgentProfile> agents);

/// One batch of m shipments and its arrival campaign. `table` must be built
/// for (config.m, config.beta).
TrialRecord run_trial(const CargoConfig& config, const EpsilonTable& table, int trial_index);

/// Runs all trials on `threads` workers (0 = worker_count_from_env()). Records
/// come back ordered by trial index whatever the worker count.
CampaignResult run_campaign(const CargoConfig& config, const EpsilonTable& table, unsigned threads = 0);
CampaignResult run_campaign(const CargoConfig& config, unsigned threads = 0);

CampaignSummary summarize(const std::vector<TrialRecord>& records);

/// SHARE_SENSE_THREADS if set and positive, else the hardware concurrency.
unsigned worker_count_from_env();

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_epsilon_csv(std::ostream& out, const EpsilonTable& table);

}  // namespace share_sense
