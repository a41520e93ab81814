#include "share_sense/lp_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "share_sense/error.hpp"
#include "share_sense/simplex.hpp"
#include "share_sense/tolerances.hpp"

namespace share_sense {

Eigen::MatrixXd gather_columns(const Eigen::MatrixXd& A, const std::vector<Eigen::Index>& indices) {
    Eigen::MatrixXd out(A.rows(), static_cast<Eigen::Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = A.col(indices[k]);
    return out;
}

AssembledLp assemble(const SharingProblem& problem) {
    const Eigen::Index p = problem.resources;
    if (p <= 0) throw Error(ErrorCode::kInvalidInput, "resource count must be positive");
    if (problem.inequality_rows < 0 || problem.inequality_rows > p) {
        throw Error(ErrorCode::kInvalidInput, "inequality row count must lie in [0, p]");
    }
    if (problem.budget.size() != p) {
        throw Error(ErrorCode::kDimensionMismatch, "budget length differs from resource count");
    }
    if ((problem.budget.array() < 0.0).any()) {
        throw Error(ErrorCode::kInvalidInput, "budget entries must be non-negative");
    }

    Eigen::Index total = problem.inequality_rows;
    for (std::size_t i = 0; i < problem.agents.size(); ++i) {
        const AgentProfile& agent = problem.agents[i];
        const Eigen::Index n = agent.size();
        std::ostringstream where;
        where << "agent " << i << ": ";
        if (n <= 0) throw Error(ErrorCode::kInvalidInput, where.str() + "empty decision vector");
        if (static_cast<Eigen::Index>(agent.upper.size()) != n) {
            throw Error(ErrorCode::kDimensionMismatch, where.str() + "upper-limit length differs from cost length");
        }
        if (agent.usage.rows() != p) {
            throw Error(ErrorCode::kDimensionMismatch, where.str() + "usage matrix row count differs from p");
        }
        if (agent.usage.cols() != n) {
            throw Error(ErrorCode::kDimensionMismatch, where.str() + "usage matrix column count differs from n");
        }
        for (const auto& u : agent.upper) {
            if (!(u.value() >= 0.0)) throw Error(ErrorCode::kInvalidInput, where.str() + "negative upper limit");
        }
        total += n;
    }

    AssembledLp lp;
    lp.A = Eigen::MatrixXd::Zero(p, total);
    lp.c = Eigen::VectorXd::Zero(total);
    lp.d.assign(total, ExtendedReal::infinity());
    lp.b = problem.budget;
    lp.slack_count = problem.inequality_rows;
    for (Eigen::Index r = 0; r < problem.inequality_rows; ++r) lp.A(r, r) = 1.0;

    Eigen::Index offset = problem.inequality_rows;
    for (const AgentProfile& agent : problem.agents) {
        const Eigen::Index n = agent.size();
        lp.A.middleCols(offset, n) = agent.usage;
        lp.c.segment(offset, n) = agent.cost;
        for (Eigen::Index j = 0; j < n; ++j) lp.d[offset + j] = agent.upper[j];
        lp.agent_columns.push_back({offset, n});
        offset += n;
    }
    return lp;
}

PrimalSolution solve_primal(const AssembledLp& lp) {
    if (lp.cols() < lp.rows()) {
        throw Error(ErrorCode::kInvalidInput, "fewer variables than budget rows");
    }
    const SimplexResult result = solve_bounded({lp.A, lp.b, lp.c, lp.d});

    PrimalSolution solution;
    solution.x = result.x;
    solution.objective = result.objective;
    solution.agent_columns = lp.agent_columns;

    for (Eigen::Index idx : result.basis) {
        if (idx < 0) {
            solution.flags.rank_deficient = true;
            continue;
        }
        solution.partition.basic.push_back(idx);
    }
    std::sort(solution.partition.basic.begin(), solution.partition.basic.end());
    for (Eigen::Index j = 0; j < lp.cols(); ++j) {
        if (result.status[j] == VarStatus::kAtLower) solution.partition.at_lower.push_back(j);
        if (result.status[j] == VarStatus::kAtUpper) solution.partition.at_upper.push_back(j);
    }

    for (Eigen::Index j : solution.partition.basic) {
        const double v = solution.x[j];
        if (std::abs(v) <= kTolAct) solution.flags.degenerate = true;
        if (lp.d[j].is_finite() && std::abs(v - lp.d[j].value()) <= kTolAct) solution.flags.degenerate = true;
    }
    if (solution.flags.rank_deficient) {
        solution.flags.degenerate = true;
        return solution;
    }

    const ReducedCosts rc = reduced_costs(lp, solution.partition);
    if (rc.at_lower.size() > 0 && rc.at_lower.cwiseAbs().minCoeff() <= kTolRc) solution.flags.non_unique = true;
    if (rc.at_upper.size() > 0 && rc.at_upper.cwiseAbs().minCoeff() <= kTolRc) solution.flags.non_unique = true;
    return solution;
}

BasicSolutionCheck check_basic_solution(const AssembledLp& lp, const Eigen::VectorXd& x,
                                        const BasisPartition& partition) {
    BasicSolutionCheck check;
    auto fail = [&check](std::string msg) {
        check.ok = false;
        check.diagnostic = std::move(msg);
        return check;
    };
    if (x.size() != lp.cols()) return fail("dimension mismatch");

    const Eigen::VectorXd residual = lp.A * x - lp.b;
    const double scale = std::max(1.0, lp.b.cwiseAbs().maxCoeff());
    if (residual.cwiseAbs().maxCoeff() > kTolFeas * scale) return fail("budget residual");

    if (static_cast<Eigen::Index>(partition.basic.size()) != lp.rows()) return fail("basis size differs from p");

    std::vector<int> seen(lp.cols(), 0);
    for (const auto* set : {&partition.basic, &partition.at_lower, &partition.at_upper}) {
        for (Eigen::Index j : *set) {
            if (j < 0 || j >= lp.cols()) return fail("partition index out of range");
            ++seen[j];
        }
    }
    for (Eigen::Index j = 0; j < lp.cols(); ++j) {
        if (seen[j] != 1) return fail("partition does not cover every index exactly once");
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(gather_columns(lp.A, partition.basic));
    if (lu.rank() != lp.rows()) return fail("basic columns linearly dependent");

    std::vector<bool> is_basic(lp.cols(), false);
    for (Eigen::Index j : partition.basic) is_basic[j] = true;
    for (Eigen::Index j = 0; j < lp.cols(); ++j) {
        if (is_basic[j]) continue;
        const bool at_zero = std::abs(x[j]) <= kTolAct;
        const bool at_limit = lp.d[j].is_finite() && std::abs(x[j] - lp.d[j].value()) <= kTolAct;
        if (!at_zero && !at_limit) return fail("nonbasic index " + std::to_string(j) + " strictly interior");
    }
    return check;
}

ReducedCosts reduced_costs(const AssembledLp& lp, const BasisPartition& partition) {
    const Eigen::MatrixXd basis = gather_columns(lp.A, partition.basic);
    if (basis.cols() != lp.rows()) throw Error(ErrorCode::kSingularBasis, "basis is not square");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis.transpose());
    if (!lu.isInvertible()) throw Error(ErrorCode::kSingularBasis, "basis matrix is singular");

    Eigen::VectorXd cost_basic(lp.rows());
    for (std::size_t k = 0; k < partition.basic.size(); ++k) {
        cost_basic[static_cast<Eigen::Index>(k)] = lp.c[partition.basic[k]];
    }
    const Eigen::VectorXd y = lu.solve(cost_basic);

    auto price = [&](const std::vector<Eigen::Index>& set) {
        Eigen::VectorXd r(static_cast<Eigen::Index>(set.size()));
        for (std::size_t k = 0; k < set.size(); ++k) {
            r[static_cast<Eigen::Index>(k)] = lp.c[set[k]] - y.dot(lp.A.col(set[k]));
        }
        return r;
    };
    return {price(partition.at_lower), price(partition.at_upper)};
}

AuditReport audit_assumptions(const AssembledLp& lp, const PrimalSolution& solution) {
    AuditReport report;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lp.A);
    report.rank = lu.rank();
    report.full_row_rank = report.rank == lp.rows();

    report.variable_count = lp.cols();
    Eigen::Index active = lp.rows();
    for (Eigen::Index j = 0; j < lp.cols(); ++j) {
        if (std::abs(solution.x[j]) <= kTolAct) ++active;
        if (lp.d[j].is_finite() && std::abs(solution.x[j] - lp.d[j].value()) <= kTolAct) ++active;
    }
    report.active_constraints = active;
    report.active_count_matches = active == lp.cols();

    report.upper_limits_positive = true;
    for (Eigen::Index j = lp.slack_count; j < lp.cols(); ++j) {
        if (lp.d[j].is_finite() && !(lp.d[j].value() > 0.0)) report.upper_limits_positive = false;
    }
    report.unique_optimum = !solution.flags.non_unique;
    return report;
}

}  // namespace share_sense
