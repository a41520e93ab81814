#include "share_sense/new_agent.hpp"

#include <algorithm>
#include <cmath>

#include "share_sense/duality.hpp"
#include "share_sense/error.hpp"
#include "share_sense/tolerances.hpp"

namespace share_sense {

ArrivalCertifier::ArrivalCertifier(const AssembledLp& lp, const PrimalSolution& solution) {
    if (!solution.flags.clean()) {
        throw Error(ErrorCode::kDegenerateBase, "base solution is degenerate or not unique; verdict unreliable");
    }
    const Eigen::MatrixXd basis = gather_columns(lp.A, solution.partition.basic);
    if (basis.cols() != lp.rows()) throw Error(ErrorCode::kSingularBasis, "basis is not square");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis.transpose());
    if (!lu.isInvertible()) throw Error(ErrorCode::kSingularBasis, "basis matrix is singular");
    Eigen::VectorXd cost_basic(lp.rows());
    for (std::size_t k = 0; k < solution.partition.basic.size(); ++k) {
        cost_basic[static_cast<Eigen::Index>(k)] = lp.c[solution.partition.basic[k]];
    }
    basis_prices_ = lu.solve(cost_basic);
    lambda_ = dual_closed_form(lp, solution.partition);
}

ArrivalVerdict ArrivalCertifier::verdict(const AgentProfile& newcomer) const {
    const Eigen::Index n = newcomer.size();
    if (newcomer.usage.rows() != basis_prices_.size() || newcomer.usage.cols() != n ||
        static_cast<Eigen::Index>(newcomer.upper.size()) != n) {
        throw Error(ErrorCode::kDimensionMismatch, "newcomer dimensions do not match the problem");
    }

    ArrivalVerdict v;
    v.reduced_cost = newcomer.cost - newcomer.usage.transpose() * basis_prices_;
    bool any_negative = false;
    bool any_zero = false;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (v.reduced_cost[j] < -kTolRc) any_negative = true;
        else if (v.reduced_cost[j] <= kTolRc) any_zero = true;
    }
    v.changes = any_negative;
    v.tie = !any_negative && any_zero;

    const Eigen::VectorXd gain = -newcomer.cost - newcomer.usage.transpose() * lambda_;
    double thresholded = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        v.dual_violation += times(std::max(0.0, gain[j]), newcomer.upper[j]);
        if (gain[j] > kTolRc) thresholded += times(gain[j], newcomer.upper[j]);
    }
    v.forms_agree = (thresholded > 0.0) == v.changes;
    return v;
}

ArrivalVerdict changes_solution(const PrimalSolution& solution, const AssembledLp& lp,
                                const AgentProfile& newcomer) {
    return ArrivalCertifier(lp, solution).verdict(newcomer);
}

AssembledLp augment(const AssembledLp& lp, const AgentProfile& newcomer) {
    const Eigen::Index n = newcomer.size();
    if (newcomer.usage.rows() != lp.rows() || newcomer.usage.cols() != n ||
        static_cast<Eigen::Index>(newcomer.upper.size()) != n) {
        throw Error(ErrorCode::kDimensionMismatch, "newcomer dimensions do not match the problem");
    }
    AssembledLp out = lp;
    const Eigen::Index offset = lp.cols();
    out.A.conservativeResize(Eigen::NoChange, offset + n);
    out.A.rightCols(n) = newcomer.usage;
    out.c.conservativeResize(offset + n);
    out.c.tail(n) = newcomer.cost;
    out.d.insert(out.d.end(), newcomer.upper.begin(), newcomer.upper.end());
    out.agent_columns.push_back({offset, n});
    return out;
}

PrimalSolution solve_augmented(const AssembledLp& lp, const AgentProfile& newcomer) {
    return solve_primal(augment(lp, newcomer));
}

bool resolve_changes(const PrimalSolution& base, const PrimalSolution& augmented) {
    const ColumnRange last = augmented.agent_columns.back();
    const bool newcomer_active = (augmented.x.segment(last.offset, last.size).array().abs() > kTolAct).any();
    const double improvement = base.objective - augmented.objective;
    const bool improved = improvement > 1e-8 * std::max(1.0, std::abs(base.objective));
    return newcomer_active || improved;
}

ViolationEstimate empirical_violation_probability(const PrimalSolution& solution, const AssembledLp& lp,
                                                  const AgentSampler& sampler, std::int64_t draws,
                                                  const EstimateOptions& options) {
    if (draws < 1) throw Error(ErrorCode::kInvalidInput, "at least one draw is required");
    const ArrivalCertifier certifier(lp, solution);

    ViolationEstimate estimate;
    estimate.draws = draws;
    for (std::int64_t draw = 0; draw < draws; ++draw) {
        const AgentProfile newcomer = sampler(static_cast<std::uint64_t>(draw));
        const ArrivalVerdict v = certifier.verdict(newcomer);
        if (v.changes) ++estimate.changes;
        if (v.tie) ++estimate.ties;
        if (options.audit_stride > 0 && draw % options.audit_stride == 0 && !v.tie) {
            ++estimate.audited;
            const PrimalSolution augmented = solve_augmented(lp, newcomer);
            if (resolve_changes(solution, augmented) != v.changes) ++estimate.audit_mismatches;
        }
    }
    estimate.p_hat = static_cast<double>(estimate.changes) / static_cast<double>(draws);
    return estimate;
}

}  // namespace share_sense
