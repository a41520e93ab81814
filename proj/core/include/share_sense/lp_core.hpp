#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

#include "share_sense/extended_real.hpp"

namespace share_sense {

/// One agent: cost per unit, upper limits and resource usage per unit.
/// The decision-vector length is the number of entries in `cost`.
struct AgentProfile {
    Eigen::VectorXd cost;
    std::vector<ExtendedReal> upper;
    Eigen::MatrixXd usage;  // p x n

    Eigen::Index size() const { return cost.size(); }
};

/// Resource-sharing instance. The first `inequality_rows` budget rows are
/// inequalities (an implicit slack column each), the rest are equalities.
struct SharingProblem {
    Eigen::Index resources{0};
    Eigen::Index inequality_rows{0};
    Eigen::VectorXd budget;
    std::vector<AgentProfile> agents;
};

/// Contiguous column block [offset, offset + size) of one agent.
struct ColumnRange {
    Eigen::Index offset{0};
    Eigen::Index size{0};
};

/// Dense form: slack block first, then agents in input order.
struct AssembledLp {
    Eigen::MatrixXd A;
    Eigen::VectorXd c;
    std::vector<ExtendedReal> d;
    Eigen::VectorXd b;
    Eigen::Index slack_count{0};
    std::vector<ColumnRange> agent_columns;

    Eigen::Index rows() const { return A.rows(); }
    Eigen::Index cols() const { return A.cols(); }
    std::size_t agent_count() const { return agent_columns.size(); }
};

struct BasisPartition {
    std::vector<Eigen::Index> basic;
    std::vector<Eigen::Index> at_lower;
    std::vector<Eigen::Index> at_upper;
};

struct SolutionFlags {
    // A basic variable sits at one of its bounds.
    bool degenerate{false};
    // Some non-basic reduced cost is zero: alternative optima exist.
    bool non_unique{false};
    // The budget rows are linearly dependent; the basis holds fewer than p columns.
    bool rank_deficient{false};

    bool clean() const { return !degenerate && !non_unique && !rank_deficient; }
};

struct PrimalSolution {
    Eigen::VectorXd x;
    double objective{0.0};
    BasisPartition partition;
    std::vector<ColumnRange> agent_columns;
    SolutionFlags flags;
};

struct ReducedCosts {
    Eigen::VectorXd at_lower;  // ordered like partition.at_lower
    Eigen::VectorXd at_upper;  // ordered like partition.at_upper
};

struct BasicSolutionCheck {
    bool ok{true};
    std::string diagnostic;
};

struct AuditReport {
    bool full_row_rank{false};
    Eigen::Index rank{0};
    Eigen::Index active_constraints{0};
    Eigen::Index variable_count{0};
    bool active_count_matches{false};
    bool upper_limits_positive{false};
    bool unique_optimum{false};
    std::string distribution_condition{"not checkable from one sample"};
};

/// Validates the problem and builds the dense LP.
/// Throws Error(kDimensionMismatch | kInvalidInput).
AssembledLp assemble(const SharingProblem& problem);

/// Optimal basic feasible solution with its basis partition. Degeneracy and
/// non-uniqueness are reported through `flags`, never thrown.
/// Throws Error(kInfeasible | kUnbounded).
PrimalSolution solve_primal(const AssembledLp& lp);

/// Checks Ax = b, |B| = p, rank(A_B) = p and non-basic values at a bound.
BasicSolutionCheck check_basic_solution(const AssembledLp& lp, const Eigen::VectorXd& x,
                                        const BasisPartition& partition);

/// c_N - c_B' A_B^{-1} A_N over both non-basic sets. Throws Error(kSingularBasis).
ReducedCosts reduced_costs(const AssembledLp& lp, const BasisPartition& partition);

AuditReport audit_assumptions(const AssembledLp& lp, const PrimalSolution& solution);

/// Columns of A indexed by `indices`.
Eigen::MatrixXd gather_columns(const Eigen::MatrixXd& A, const std::vector<Eigen::Index>& indices);

}  // namespace share_sense
