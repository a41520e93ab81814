#include "share_sense/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "share_sense/error.hpp"
#include "share_sense/tolerances.hpp"

namespace share_sense {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kZeroStep = 1e-12;

class BoundedSimplex {
public:
    BoundedSimplex(const BoundedLp& lp, const SimplexOptions& options)
        : options_(options),
          rows_(lp.A.rows()),
          cols_(lp.A.cols()),
          A_(lp.A),
          b_(lp.b),
          c_(lp.c),
          row_factor_(Eigen::VectorXd::Ones(lp.A.rows())) {
        upper_.reserve(cols_);
        for (const auto& u : lp.upper) upper_.push_back(u.value());
        scale_and_orient();
        choose_initial_basis();
    }

    SimplexResult run() {
        if (!artificial_rows_.empty()) {
            Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total_cols());
            phase1.tail(artificial_rows_.size()).setOnes();
            iterate(phase1);
            double infeasibility = 0.0;
            for (Eigen::Index j = cols_; j < total_cols(); ++j) infeasibility += x_[j];
            if (infeasibility > kTolFeas) {
                std::ostringstream msg;
                msg << "phase-1 optimum " << infeasibility << " exceeds feasibility tolerance";
                throw Error(ErrorCode::kInfeasible, msg.str());
            }
            drive_out_artificials();
            phase_two_ = true;
        }
        phase_two_ = true;
        Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(total_cols());
        phase2.head(cols_) = c_;
        iterate(phase2);
        return collect();
    }

private:
    Eigen::Index total_cols() const {
        return cols_ + static_cast<Eigen::Index>(artificial_rows_.size());
    }

    double upper(Eigen::Index j) const {
        if (j < cols_) return upper_[j];
        return phase_two_ ? 0.0 : kInf;
    }

    Eigen::VectorXd column(Eigen::Index j) const {
        if (j < cols_) return A_.col(j);
        Eigen::VectorXd e = Eigen::VectorXd::Zero(rows_);
        e[artificial_rows_[j - cols_]] = 1.0;
        return e;
    }

    double dot_column(const Eigen::VectorXd& y, Eigen::Index j) const {
        if (j < cols_) return y.dot(A_.col(j));
        return y[artificial_rows_[j - cols_]];
    }

    void scale_and_orient() {
        for (Eigen::Index r = 0; r < rows_; ++r) {
            double factor = 1.0;
            if (options_.scale_rows) {
                const double norm = A_.row(r).cwiseAbs().maxCoeff();
                if (norm > 0.0) factor = 1.0 / norm;
            }
            if (b_[r] < 0.0) factor = -factor;
            A_.row(r) *= factor;
            b_[r] *= factor;
            row_factor_[r] = factor;
        }
    }

    // Use an existing unit column for a row whenever its bound admits the
    // starting value; remaining rows get an artificial.
    void choose_initial_basis() {
        basis_.assign(rows_, -1);
        std::vector<bool> used(cols_, false);
        for (Eigen::Index j = 0; j < cols_; ++j) {
            Eigen::Index row = -1;
            int nonzeros = 0;
            for (Eigen::Index r = 0; r < rows_; ++r) {
                if (A_(r, j) != 0.0) {
                    ++nonzeros;
                    row = r;
                }
            }
            if (nonzeros != 1 || basis_[row] != -1 || A_(row, j) <= 0.0) continue;
            if (b_[row] / A_(row, j) > upper_[j]) continue;
            basis_[row] = j;
            used[j] = true;
        }
        for (Eigen::Index r = 0; r < rows_; ++r) {
            if (basis_[r] == -1) {
                basis_[r] = cols_ + static_cast<Eigen::Index>(artificial_rows_.size());
                artificial_rows_.push_back(r);
            }
        }
        status_.assign(total_cols(), VarStatus::kAtLower);
        x_ = Eigen::VectorXd::Zero(total_cols());
        for (Eigen::Index r = 0; r < rows_; ++r) status_[basis_[r]] = VarStatus::kBasic;
        refactor();
    }

    void refactor() {
        Eigen::MatrixXd basis_matrix(rows_, rows_);
        for (Eigen::Index r = 0; r < rows_; ++r) basis_matrix.col(r) = column(basis_[r]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
        if (!lu.isInvertible()) throw Error(ErrorCode::kSingularBasis, "simplex basis became singular");
        basis_inverse_ = lu.inverse();
        Eigen::VectorXd rhs = b_;
        for (Eigen::Index j = 0; j < total_cols(); ++j) {
            if (status_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
            rhs -= column(j) * x_[j];
        }
        const Eigen::VectorXd xb = basis_inverse_ * rhs;
        for (Eigen::Index r = 0; r < rows_; ++r) x_[basis_[r]] = xb[r];
    }

    void pivot_inverse(Eigen::Index leave_row, const Eigen::VectorXd& alpha) {
        const double pivot = alpha[leave_row];
        basis_inverse_.row(leave_row) /= pivot;
        for (Eigen::Index r = 0; r < rows_; ++r) {
            if (r == leave_row || alpha[r] == 0.0) continue;
            basis_inverse_.row(r) -= alpha[r] * basis_inverse_.row(leave_row);
        }
    }

    void iterate(const Eigen::VectorXd& cost) {
        const Eigen::Index limit = 50 * (rows_ + total_cols()) + 1000;
        int degenerate_run = 0;
        bool bland = false;
        for (Eigen::Index it = 0;; ++it) {
            if (it >= limit) throw Error(ErrorCode::kIterationLimit, "simplex iteration limit reached");
            if (iterations_since_refactor_ >= options_.refactor_every) {
                refactor();
                iterations_since_refactor_ = 0;
            }

            Eigen::VectorXd cost_basic(rows_);
            for (Eigen::Index r = 0; r < rows_; ++r) cost_basic[r] = cost[basis_[r]];
            const Eigen::VectorXd y = basis_inverse_.transpose() * cost_basic;

            Eigen::Index entering = -1;
            double best = 0.0;
            for (Eigen::Index j = 0; j < total_cols(); ++j) {
                if (status_[j] == VarStatus::kBasic || upper(j) == 0.0) continue;
                const double reduced = cost[j] - dot_column(y, j);
                const bool eligible = (status_[j] == VarStatus::kAtLower && reduced < -kTolRc) ||
                                      (status_[j] == VarStatus::kAtUpper && reduced > kTolRc);
                if (!eligible) continue;
                if (bland) {
                    entering = j;
                    break;
                }
                if (std::abs(reduced) > best) {
                    best = std::abs(reduced);
                    entering = j;
                }
            }
            if (entering < 0) return;

            const Eigen::VectorXd alpha = basis_inverse_ * column(entering);
            const double direction = status_[entering] == VarStatus::kAtLower ? 1.0 : -1.0;

            double step = upper(entering);
            Eigen::Index leave_row = -1;
            bool leave_to_upper = false;
            double leave_pivot = 0.0;
            for (Eigen::Index r = 0; r < rows_; ++r) {
                const double a = direction * alpha[r];
                const Eigen::Index var = basis_[r];
                double ratio = kInf;
                bool to_upper = false;
                if (a > kPivotTol) {
                    ratio = std::max(0.0, x_[var]) / a;
                } else if (a < -kPivotTol && std::isfinite(upper(var))) {
                    ratio = std::max(0.0, upper(var) - x_[var]) / (-a);
                    to_upper = true;
                } else {
                    continue;
                }
                bool take = ratio < step;
                if (!take && ratio == step && leave_row >= 0) {
                    take = bland ? var < basis_[leave_row] : std::abs(a) > leave_pivot;
                }
                if (take) {
                    step = ratio;
                    leave_row = r;
                    leave_to_upper = to_upper;
                    leave_pivot = std::abs(a);
                }
            }
            if (!std::isfinite(step)) throw Error(ErrorCode::kUnbounded, "objective unbounded below");

            x_[entering] += direction * step;
            for (Eigen::Index r = 0; r < rows_; ++r) x_[basis_[r]] -= direction * step * alpha[r];

            if (leave_row < 0) {
                status_[entering] = status_[entering] == VarStatus::kAtLower ? VarStatus::kAtUpper
                                                                             : VarStatus::kAtLower;
                x_[entering] = status_[entering] == VarStatus::kAtLower ? 0.0 : upper(entering);
            } else {
                const Eigen::Index leaving = basis_[leave_row];
                status_[leaving] = leave_to_upper ? VarStatus::kAtUpper : VarStatus::kAtLower;
                x_[leaving] = leave_to_upper ? upper(leaving) : 0.0;
                basis_[leave_row] = entering;
                status_[entering] = VarStatus::kBasic;
                pivot_inverse(leave_row, alpha);
                ++iterations_since_refactor_;
            }
            ++iterations_;

            if (step <= kZeroStep) {
                if (++degenerate_run >= options_.bland_after && !bland) {
                    bland = true;
                    ++bland_activations_;
                }
            } else {
                degenerate_run = 0;
                bland = false;
            }
        }
    }

    void drive_out_artificials() {
        for (Eigen::Index r = 0; r < rows_; ++r) {
            if (basis_[r] < cols_) continue;
            const Eigen::VectorXd row = basis_inverse_.row(r);
            for (Eigen::Index j = 0; j < cols_; ++j) {
                if (status_[j] == VarStatus::kBasic || upper_[j] == 0.0) continue;
                if (std::abs(row.dot(A_.col(j))) <= 1e-7) continue;
                const Eigen::VectorXd alpha = basis_inverse_ * A_.col(j);
                status_[basis_[r]] = VarStatus::kAtLower;
                x_[basis_[r]] = 0.0;
                basis_[r] = j;
                status_[j] = VarStatus::kBasic;
                pivot_inverse(r, alpha);
                break;
            }
        }
        refactor();
        iterations_since_refactor_ = 0;
    }

    SimplexResult collect() {
        refactor();
        SimplexResult result;
        result.x = x_.head(cols_);
        for (Eigen::Index j = 0; j < cols_; ++j) {
            // Snap round-off at the bounds.
            if (status_[j] == VarStatus::kAtLower) result.x[j] = 0.0;
            if (status_[j] == VarStatus::kAtUpper) result.x[j] = upper_[j];
        }
        result.objective = c_.dot(result.x);
        result.basis.resize(rows_);
        Eigen::VectorXd cost_basic(rows_);
        for (Eigen::Index r = 0; r < rows_; ++r) {
            result.basis[r] = basis_[r] < cols_ ? basis_[r] : -1;
            cost_basic[r] = basis_[r] < cols_ ? c_[basis_[r]] : 0.0;
        }
        result.status.assign(status_.begin(), status_.begin() + cols_);
        const Eigen::VectorXd y_scaled = basis_inverse_.transpose() * cost_basic;
        result.row_duals = y_scaled.cwiseProduct(row_factor_);
        result.iterations = iterations_;
        result.bland_activations = bland_activations_;
        return result;
    }

    SimplexOptions options_;
    Eigen::Index rows_;
    Eigen::Index cols_;
    Eigen::MatrixXd A_;
    Eigen::VectorXd b_;
    Eigen::VectorXd c_;
    std::vector<double> upper_;
    Eigen::VectorXd row_factor_;

    std::vector<Eigen::Index> artificial_rows_;
    std::vector<Eigen::Index> basis_;
    std::vector<VarStatus> status_;
    Eigen::VectorXd x_;
    Eigen::MatrixXd basis_inverse_;
    bool phase_two_{false};
    int iterations_{0};
    int iterations_since_refactor_{0};
    int bland_activations_{0};
};

}  // namespace

SimplexResult solve_bounded(const BoundedLp& lp, const SimplexOptions& options) {
    if (lp.b.size() != lp.A.rows() || lp.c.size() != lp.A.cols() ||
        static_cast<Eigen::Index>(lp.upper.size()) != lp.A.cols()) {
        throw Error(ErrorCode::kDimensionMismatch, "bounded LP dimensions disagree");
    }
    for (const auto& u : lp.upper) {
        if (!(u.value() >= 0.0)) throw Error(ErrorCode::kInvalidInput, "upper limits must be >= 0");
    }
    if (lp.A.rows() == 0) {
        // No coupling rows: each variable sits at whichever bound its cost prefers.
        SimplexResult result;
        result.x = Eigen::VectorXd::Zero(lp.A.cols());
        result.status.assign(lp.A.cols(), VarStatus::kAtLower);
        for (Eigen::Index j = 0; j < lp.A.cols(); ++j) {
            if (lp.c[j] < 0.0) {
                if (lp.upper[j].is_infinite()) throw Error(ErrorCode::kUnbounded, "objective unbounded below");
                result.x[j] = lp.upper[j].value();
                result.status[j] = VarStatus::kAtUpper;
            }
        }
        result.objective = lp.c.dot(result.x);
        result.row_duals = Eigen::VectorXd::Zero(0);
        return result;
    }
    BoundedSimplex solver(lp, options);
    return solver.run();
}

}  // namespace share_sense
