#pragma once

#include <Eigen/Dense>

#include <vector>

#include "share_sense/extended_real.hpp"

namespace share_sense {

/// min c'x  s.t.  Ax = b,  0 <= x <= upper.
struct BoundedLp {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    std::vector<ExtendedReal> upper;
};

enum class VarStatus { kBasic, kAtLower, kAtUpper };

struct SimplexResult {
    Eigen::VectorXd x;
    double objective{0.0};
    // Basic column per row; -1 marks an artificial that could not be driven
    // out (linearly dependent rows).
    std::vector<Eigen::Index> basis;
    std::vector<VarStatus> status;
    // y with c_B = B' y, expressed for the unscaled rows.
    Eigen::VectorXd row_duals;
    int iterations{0};
    int bland_activations{0};
};

struct SimplexOptions {
    // Consecutive degenerate pivots before switching to Bland's rule.
    int bland_after{50};
    int refactor_every{40};
    bool scale_rows{true};
};

/// Two-phase revised simplex with bounded variables.
///
/// Non-basic variables rest at 0 or at their finite upper limit; columns with
/// an infinite limit never rest at the upper side. Rows are scaled to unit
/// max-norm before pivoting and the duals are unscaled on return.
/// Throws Error(kInfeasible | kUnbounded | kIterationLimit).
SimplexResult solve_bounded(const BoundedLp& lp, const SimplexOptions& options = {});

}  // namespace share_sense
