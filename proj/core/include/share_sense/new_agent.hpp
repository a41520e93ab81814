#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>

#include "share_sense/lp_core.hpp"

namespace share_sense {

struct ArrivalVerdict {
    bool changes{false};
    // Every reduced-cost entry is >= -tol but one of them is within tol of 0.
    bool tie{false};
    // c_bar' - c_B' A_B^{-1} A_bar, one entry per newcomer variable.
    Eigen::VectorXd reduced_cost;
    // max{0, -c_bar' - lambda' A_bar} d_bar with inf * 0 = 0.
    double dual_violation{0.0};
    // The multiplier form of the test reached the same decision.
    bool forms_agree{true};
    std::optional<double> resolve_objective_delta;
};

/// Prices arrivals against a fixed optimal basis. Construct once per base
/// solution, then query for many newcomers.
class ArrivalCertifier {
public:
    /// Throws Error(kDegenerateBase) if the solution carries any flag, since
    /// the basis then does not certify a unique optimum.
    ArrivalCertifier(const AssembledLp& lp, const PrimalSolution& solution);

    /// Throws Error(kDimensionMismatch) if the newcomer's usage matrix does not have p rows.
    ArrivalVerdict verdict(const AgentProfile& newcomer) const;

    const Eigen::VectorXd& lambda() const { return lambda_; }

private:
    Eigen::VectorXd basis_prices_;  // y with A_B' y = c_B
    Eigen::VectorXd lambda_;        // closed-form multipliers, -y
};

ArrivalVerdict changes_solution(const PrimalSolution& solution, const AssembledLp& lp,
                                const AgentProfile& newcomer);

/// Appends the newcomer as the last agent and re-solves from scratch.
AssembledLp augment(const AssembledLp& lp, const AgentProfile& newcomer);
PrimalSolution solve_augmented(const AssembledLp& lp, const AgentProfile& newcomer);

/// Whether the augmented optimum differs from (x*, 0): newcomer active beyond
/// the activity tolerance or an objective improvement beyond 1e-8 relative.
bool resolve_changes(const PrimalSolution& base, const PrimalSolution& augmented);

using AgentSampler = std::function<AgentProfile(std::uint64_t draw)>;

struct ViolationEstimate {
    double p_hat{0.0};
    std::int64_t draws{0};
    std::int64_t changes{0};
    std::int64_t ties{0};
    std::int64_t audited{0};
    std::int64_t audit_mismatches{0};
};

struct EstimateOptions {
    // Re-solve every `audit_stride`-th draw (0 disables the audit).
    std::int64_t audit_stride{100};
};

/// Fraction of `draws` sampled newcomers that change the optimum, decided by
/// the reduced-cost certificate. Ties count as "no change" and are reported
/// separately. The sampler receives the draw index so every draw can own its
/// random stream.
ViolationEstimate empirical_violation_probability(const PrimalSolution& solution, const AssembledLp& lp,
                                                  const AgentSampler& sampler, std::int64_t draws,
                                                  const EstimateOptions& options = {});

}  // namespace share_sense
