#include "share_sense/sensitivity_bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "share_sense/error.hpp"
#include "share_sense/tolerances.hpp"

namespace share_sense {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Terms this far (in log) below the largest one cannot affect a double sum.
constexpr double kNegligibleLog = -60.0;
// t = exp(u) stays a normal double over this range of u.
constexpr double kMinLogT = -700.0;
constexpr double kMaxLogT = 700.0;

std::vector<double> log_factorials(int n) {
    std::vector<double> table(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) table[static_cast<std::size_t>(i)] = std::lgamma(static_cast<double>(i) + 1.0);
    return table;
}

struct LogTerm {
    double log_coef;
    int exponent;
};

// log(sum exp(l_i)) with the linear-domain sum compensated (Kahan).
template <typename LogOf>
double log_sum_exp(std::size_t count, LogOf&& log_of) {
    double peak = kNegInf;
    for (std::size_t i = 0; i < count; ++i) peak = std::max(peak, log_of(i));
    if (peak == kNegInf) return kNegInf;
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double rel = log_of(i) - peak;
        if (rel < kNegligibleLog) continue;
        const double y = std::exp(rel) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return peak + std::log(sum);
}

double term_log(const LogTerm& term, double log_t) {
    if (term.exponent == 0) return term.log_coef;
    return term.log_coef + term.exponent * log_t;
}

// The polynomial split as P(t) - N(t), with P a single monomial (or the
// constant 1 when k = m) and N a sum of positive monomials. Roots are the
// points where phi = N / P equals 1; phi is convex in t.
class ScenarioPolynomial {
public:
    ScenarioPolynomial(int m, int k, double beta, const std::vector<double>& log_fact) {
        auto log_choose = [&log_fact](int n, int r) {
            return log_fact[static_cast<std::size_t>(n)] - log_fact[static_cast<std::size_t>(r)] -
                   log_fact[static_cast<std::size_t>(n - r)];
        };
        if (k < m) {
            positive_ = {log_choose(m, k), m - k};
            const double head = std::log(beta / (2.0 * m));
            for (int i = k; i <= m - 1; ++i) negative_.push_back({head + log_choose(i, k), i - k});
        } else {
            positive_ = {0.0, 0};
        }
        const double tail = std::log(beta / (6.0 * m));
        for (int i = m + 1; i <= 4 * m; ++i) negative_.push_back({tail + log_choose(i, k), i - k});
    }

    PolyValue evaluate(double log_t) const {
        const double log_p = term_log(positive_, log_t);
        const double log_n = log_negative(log_t);
        double peak = log_p;
        for (const LogTerm& term : negative_) peak = std::max(peak, term_log(term, log_t));

        PolyValue v;
        v.log_max_term = peak;
        if (log_p == log_n) {
            v.sign = 0;
            v.log_abs = kNegInf;
        } else if (log_p > log_n) {
            v.sign = 1;
            v.log_abs = log_p + std::log1p(-std::exp(log_n - log_p));
        } else {
            v.sign = -1;
            v.log_abs = log_n + std::log1p(-std::exp(log_p - log_n));
        }
        return v;
    }

    // log(N / P); the polynomial is positive exactly where this is negative.
    double log_ratio(double log_t) const { return log_negative(log_t) - term_log(positive_, log_t); }

    // Sign of d(phi)/d(log t).
    int slope_sign(double log_t) const {
        const int e0 = positive_.exponent;
        auto part = [&](bool rising) {
            return log_sum_exp(negative_.size(), [&](std::size_t i) {
                const LogTerm& term = negative_[i];
                const int rel = term.exponent - e0;
                if (rising ? rel <= 0 : rel >= 0) return kNegInf;
                return term.log_coef + std::log(std::abs(static_cast<double>(rel))) + rel * log_t;
            });
        };
        const double up = part(true);
        const double down = part(false);
        if (up > down) return 1;
        if (up < down) return -1;
        return 0;
    }

private:
    double log_negative(double log_t) const {
        return log_sum_exp(negative_.size(), [&](std::size_t i) { return term_log(negative_[i], log_t); });
    }

    LogTerm positive_{};
    std::vector<LogTerm> negative_;
};

[[noreturn]] void bracket_failure(int m, int k, double beta, const char* what) {
    std::ostringstream msg;
    msg << "no sign change for m=" << m << " k=" << k << " beta=" << beta << ": " << what;
    throw Error(ErrorCode::kBracketFailure, msg.str());
}

// Bisection in t on [lo, hi] down to adjacent doubles; `positive_at(t)` must
// differ at the two ends. Returns the end with the smaller residual.
template <typename Positive>
double bisect(double lo, double hi, Positive&& positive_at, const ScenarioPolynomial& poly) {
    const bool lo_positive = positive_at(lo);
    for (int it = 0; it < 4000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (positive_at(mid) == lo_positive) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double r_lo = poly.evaluate(std::log(lo)).normalized();
    const double r_hi = poly.evaluate(std::log(hi)).normalized();
    return r_lo <= r_hi ? lo : hi;
}

RootPair solve_roots_with(int m, int k, double beta, const std::vector<double>& log_fact) {
    const ScenarioPolynomial poly(m, k, beta, log_fact);
    auto positive_at = [&poly](double t) { return poly.log_ratio(std::log(t)) < 0.0; };
    RootPair roots;

    if (k == m) {
        // log(N/P) increases with t: one crossing.
        double a = 0.0;
        double b = 0.0;
        double step = 1.0;
        while (poly.log_ratio(a) >= 0.0) {
            a -= step;
            step *= 2.0;
            if (a < kMinLogT) bracket_failure(m, k, beta, "lower end");
        }
        step = 1.0;
        while (poly.log_ratio(b) <= 0.0) {
            b += step;
            step *= 2.0;
            if (b > kMaxLogT) bracket_failure(m, k, beta, "upper end");
        }
        roots.t_low = 0.0;
        roots.t_high = bisect(std::exp(a), std::exp(b), positive_at, poly);
        roots.residual_low = 0.0;
        roots.residual_high = poly.evaluate(std::log(roots.t_high)).normalized();
        return roots;
    }

    // Minimizer of the convex ratio, located by the sign of its slope.
    double lo = -1.0;
    double hi = 1.0;
    double step = 1.0;
    while (poly.slope_sign(lo) >= 0) {
        lo -= step;
        step *= 2.0;
        if (lo < kMinLogT) bracket_failure(m, k, beta, "slope lower end");
    }
    step = 1.0;
    while (poly.slope_sign(hi) <= 0) {
        hi += step;
        step *= 2.0;
        if (hi > kMaxLogT) bracket_failure(m, k, beta, "slope upper end");
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (poly.slope_sign(mid) < 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double u_min = 0.5 * (lo + hi);
    if (poly.log_ratio(u_min) >= 0.0) bracket_failure(m, k, beta, "polynomial never positive");

    double a = u_min - 1.0;
    step = 1.0;
    while (poly.log_ratio(a) <= 0.0) {
        a -= step;
        step *= 2.0;
        if (a < kMinLogT) bracket_failure(m, k, beta, "lower root");
    }
    double b = u_min + 1.0;
    step = 1.0;
    while (poly.log_ratio(b) <= 0.0) {
        b += step;
        step *= 2.0;
        if (b > kMaxLogT) bracket_failure(m, k, beta, "upper root");
    }
    const double t_min = std::exp(u_min);
    roots.t_low = bisect(std::exp(a), t_min, positive_at, poly);
    roots.t_high = bisect(t_min, std::exp(b), positive_at, poly);
    roots.residual_low = poly.evaluate(std::log(roots.t_low)).normalized();
    roots.residual_high = poly.evaluate(std::log(roots.t_high)).normalized();
    return roots;
}

void validate(int m, int k, double beta) {
    if (m < 1) throw Error(ErrorCode::kInvalidInput, "m must be at least 1");
    if (k < 0 || k > m) throw Error(ErrorCode::kInvalidInput, "k must lie in [0, m]");
    if (!(beta > 0.0 && beta < 1.0)) throw Error(ErrorCode::kInvalidInput, "beta must lie in (0, 1)");
}

}  // namespace

double PolyValue::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

double PolyValue::normalized() const {
    if (sign == 0) return 0.0;
    return std::exp(log_abs - log_max_term);
}

EpsilonTable::EpsilonTable(int m, double beta, std::vector<EpsilonRow> rows)
    : m_(m), beta_(beta), rows_(std::move(rows)) {
    if (static_cast<int>(rows_.size()) != m_ + 1) {
        throw Error(ErrorCode::kInvalidInput, "epsilon table needs m + 1 rows");
    }
}

const EpsilonRow& EpsilonTable::row(int k) const {
    if (k < 0 || k > m_) throw Error(ErrorCode::kInvalidInput, "row index outside [0, m]");
    return rows_[static_cast<std::size_t>(k)];
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) return kNegInf;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

PolyValue poly_value(int m, int k, double beta, double t) {
    validate(m, k, beta);
    if (!(t >= 0.0)) throw Error(ErrorCode::kInvalidInput, "t must be non-negative");
    const ScenarioPolynomial poly(m, k, beta, log_factorials(4 * m));
    return poly.evaluate(t == 0.0 ? kNegInf : std::log(t));
}

RootPair solve_roots(int m, int k, double beta) {
    validate(m, k, beta);
    return solve_roots_with(m, k, beta, log_factorials(4 * m));
}

double explicit_upper_bound(int m, int k, double beta) {
    validate(m, k, beta);
    if (k == m) return 1.0;
    const double exponent = (std::log(beta) - std::log(static_cast<double>(m)) - log_binomial(m, k)) / (m - k);
    return std::clamp(-std::expm1(exponent), 0.0, 1.0);
}

EpsilonTable epsilon_table(int m, double beta, unsigned threads) {
    validate(m, 0, beta);
    const std::vector<double> log_fact = log_factorials(4 * m);
    std::vector<EpsilonRow> rows(static_cast<std::size_t>(m) + 1);

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&]() {
        for (int k = next++; k <= m && !failed; k = next++) {
            try {
                const RootPair roots = solve_roots_with(m, k, beta, log_fact);
                EpsilonRow& row = rows[static_cast<std::size_t>(k)];
                row.k = k;
                row.t_low = roots.t_low;
                row.t_high = roots.t_high;
                row.eps_low = std::max(0.0, 1.0 - roots.t_high);
                row.eps_high = std::max(0.0, 1.0 - roots.t_low);
                row.eps_explicit = explicit_upper_bound(m, k, beta);
                row.residual_low = roots.residual_low;
                row.residual_high = roots.residual_high;
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(m) + 1);
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return EpsilonTable(m, beta, std::move(rows));
}

int count_active_primal(const PrimalSolution& solution) {
    int count = 0;
    for (const ColumnRange& range : solution.agent_columns) {
        if ((solution.x.segment(range.offset, range.size).array().abs() > kTolAct).any()) ++count;
    }
    return count;
}

int count_active_dual(const AssembledLp& lp, const DualCertificate& dual) {
    int violated = 0;
    int boundary = 0;
    for (std::size_t i = 0; i < lp.agent_count(); ++i) {
        if (dual.h[static_cast<Eigen::Index>(i)] > kTolAct) {
            ++violated;
            continue;
        }
        const ColumnRange range = lp.agent_columns[i];
        for (Eigen::Index j = range.offset; j < range.offset + range.size; ++j) {
            const double gain = -lp.c[j] - dual.lambda.dot(lp.A.col(j));
            if (std::abs(gain) <= kTolAct) {
                ++boundary;
                break;
            }
        }
    }
    return violated + boundary;
}

SensitivityInterval sensitivity_interval(const PrimalSolution& solution, const EpsilonTable& table) {
    if (static_cast<int>(solution.agent_columns.size()) != table.m()) {
        throw Error(ErrorCode::kMismatchedSampleSize, "epsilon table built for a different agent count");
    }
    SensitivityInterval interval;
    interval.s_star = count_active_primal(solution);
    const EpsilonRow& row = table.row(interval.s_star);
    interval.eps_low = row.eps_low;
    interval.eps_high = row.eps_high;
    return interval;
}

}  // namespace share_sense
