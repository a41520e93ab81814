#pragma once

#include <Eigen/Dense>

#include <string>

#include "share_sense/lp_core.hpp"

namespace share_sense {

/// Budget multipliers, upper-limit multipliers (one per column of the
/// assembled LP, zero on the slack block) and per-agent relaxation values.
struct DualCertificate {
    Eigen::VectorXd lambda;
    Eigen::VectorXd nu;
    Eigen::VectorXd h;
    // Dual objective -lambda'b - sum(nu'd).
    double objective{0.0};
};

/// Result of the relaxation-form dual: multipliers plus one relaxation value
/// per agent.
struct RelaxedDual {
    Eigen::VectorXd lambda;
    Eigen::VectorXd h;
    double objective{0.0};
};

struct SlacknessReport {
    bool upper_slackness{true};        // (x - d)_j nu_j = 0
    bool reduced_cost_slackness{true};  // (-c' - lambda'A - nu')_j x_j = 0
    bool interior_equivalence{true};    // x_j in (0, d_j) <=> (-c' - lambda'A)_j = 0
    bool upper_equivalence{true};       // x_j = d_j <=> nu_j > 0
    double max_residual{0.0};
    std::string first_failure;

    bool ok() const {
        return upper_slackness && reduced_cost_slackness && interior_equivalence && upper_equivalence;
    }
};

/// lambda = -(c_B' A_B^{-1})'. Throws Error(kSingularBasis).
Eigen::VectorXd dual_closed_form(const AssembledLp& lp, const BasisPartition& partition);

/// Full certificate completed from the closed-form multipliers:
/// nu_j = max(0, -c_j - lambda'A_j) on finite limits, h_i = nu^i' d^i.
DualCertificate certificate_from_basis(const AssembledLp& lp, const BasisPartition& partition);

/// Solves the dual with explicit upper-limit multipliers as an LP.
/// Multipliers of infinite limits are fixed at zero. Equality rows leave
/// lambda free; inequality rows force lambda >= 0.
/// Throws Error(kInfeasible | kUnbounded).
DualCertificate solve_dual_full(const AssembledLp& lp);

/// Solves the dual in which only the budget rows are dualized; the inner
/// maximization over the box is replaced by its positive-part closed form.
RelaxedDual solve_dual_relaxed(const AssembledLp& lp);

/// Per-agent h_i = sum_j nu_j d_j with inf * 0 = 0.
Eigen::VectorXd relaxation_values(const AssembledLp& lp, const Eigen::VectorXd& nu);

SlacknessReport verify_complementary_slackness(const AssembledLp& lp, const PrimalSolution& primal,
                                               const DualCertificate& dual);

}  // namespace share_sense
