#pragma once

#include <vector>

#include "share_sense/duality.hpp"
#include "share_sense/lp_core.hpp"

namespace share_sense {

/// Value of the wait-and-judge polynomial in sign / log-magnitude form.
struct PolyValue {
    int sign{0};             // -1, 0 or +1
    double log_abs{0.0};     // log|value|, -inf when the value is exactly 0
    double log_max_term{0.0};  // log of the largest single term

    double value() const;
    /// |value| divided by the largest term.
    double normalized() const;
};

struct RootPair {
    double t_low{0.0};
    double t_high{0.0};
    double residual_low{0.0};   // normalized |poly| at t_low
    double residual_high{0.0};  // normalized |poly| at t_high
};

struct EpsilonRow {
    int k{0};
    double t_low{0.0};
    double t_high{0.0};
    double eps_low{0.0};
    double eps_high{0.0};
    double eps_explicit{0.0};
    double residual_low{0.0};
    double residual_high{0.0};
};

/// Interval endpoints for every possible count k = 0..m at one confidence level.
/// Immutable once built.
class EpsilonTable {
public:
    EpsilonTable(int m, double beta, std::vector<EpsilonRow> rows);

    int m() const { return m_; }
    double beta() const { return beta_; }
    const EpsilonRow& row(int k) const;
    const std::vector<EpsilonRow>& rows() const { return rows_; }

private:
    int m_;
    double beta_;
    std::vector<EpsilonRow> rows_;
};

struct SensitivityInterval {
    double eps_low{0.0};
    double eps_high{1.0};
    int s_star{0};
};

/// ln C(n, k) through log-gamma.
double log_binomial(int n, int k);

/// Left-hand side of the degree-4m polynomial equation at t >= 0. For k < m:
///   C(m,k) t^(m-k) - b/(2m) sum_{i=k}^{m-1} C(i,k) t^(i-k) - b/(6m) sum_{i=m+1}^{4m} C(i,k) t^(i-k)
/// and for k = m:
///   1 - b/(6m) sum_{i=m+1}^{4m} C(i,m) t^(i-m).
/// Every term is formed in log space; the negative terms are accumulated with
/// compensated summation relative to the largest one.
/// Throws Error(kInvalidInput) for t < 0 or k outside [0, m].
PolyValue poly_value(int m, int k, double beta, double t);

/// Both non-negative roots (k < m), or (0, unique root) for k = m.
/// Throws Error(kBracketFailure) when no sign change exists.
RootPair solve_roots(int m, int k, double beta);

/// Rows k = 0..m. `threads` = 0 picks the hardware concurrency.
EpsilonTable epsilon_table(int m, double beta, unsigned threads = 0);

/// Closed-form (looser) upper bound 1 - (beta / (m C(m,k)))^(1/(m-k)); 1 at k = m.
/// The formula is applied unchanged at k = 0, which lies outside the range the
/// bound is usually quoted for.
double explicit_upper_bound(int m, int k, double beta);

/// Agents with at least one non-zero decision entry (beyond the activity tolerance).
int count_active_primal(const PrimalSolution& solution);

/// Agents with h_i > 0 plus agents whose multiplier region boundary holds lambda.
int count_active_dual(const AssembledLp& lp, const DualCertificate& dual);

/// Table row at k = s*. Throws Error(kMismatchedSampleSize) if the table was
/// built for a different agent count.
SensitivityInterval sensitivity_interval(const PrimalSolution& solution, const EpsilonTable& table);

}  // namespace share_sense
