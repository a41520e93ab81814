#pragma once

// Brute-force LP oracle: enumerate every choice of p basic columns and every
// assignment of the remaining columns to 0 or their finite upper limit, solve
// the p x p system and keep the cheapest feasible point. Exponential; meant
// for l <= 12.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "share_sense/lp_core.hpp"

namespace share_sense::oracle {

struct Vertex {
    Eigen::VectorXd x;
    double objective{std::numeric_limits<double>::infinity()};
    std::vector<Eigen::Index> basic;
};

inline void for_each_combination(Eigen::Index n, Eigen::Index k, auto&& visit) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        visit(idx);
        Eigen::Index i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (Eigen::Index j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

/// Every basic feasible solution of the assembled LP.
inline std::vector<Vertex> enumerate_vertices(const AssembledLp& lp, double feas_tol = 1e-9) {
    const Eigen::Index p = lp.rows();
    const Eigen::Index l = lp.cols();
    std::vector<Vertex> out;
    for_each_combination(l, p, [&](const std::vector<Eigen::Index>& basic) {
        Eigen::MatrixXd B(p, p);
        for (Eigen::Index r = 0; r < p; ++r) B.col(r) = lp.A.col(basic[static_cast<std::size_t>(r)]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
        if (lu.rank() < p) return;

        std::vector<bool> is_basic(static_cast<std::size_t>(l), false);
        for (Eigen::Index j : basic) is_basic[static_cast<std::size_t>(j)] = true;
        std::vector<Eigen::Index> flippable;
        for (Eigen::Index j = 0; j < l; ++j) {
            if (!is_basic[static_cast<std::size_t>(j)] && lp.d[static_cast<std::size_t>(j)].is_finite()) flippable.push_back(j);
        }
        const Eigen::MatrixXd Binv = lu.inverse();
        const std::size_t combos = std::size_t{1} << flippable.size();
        for (std::size_t mask = 0; mask < combos; ++mask) {
            Eigen::VectorXd x = Eigen::VectorXd::Zero(l);
            for (std::size_t f = 0; f < flippable.size(); ++f) {
                if (mask & (std::size_t{1} << f)) x[flippable[f]] = lp.d[static_cast<std::size_t>(flippable[f])].value();
            }
            const Eigen::VectorXd xb = Binv * (lp.b - lp.A * x);
            bool feasible = true;
            for (Eigen::Index r = 0; r < p && feasible; ++r) {
                const Eigen::Index j = basic[static_cast<std::size_t>(r)];
                const double v = xb[r];
                if (v < -feas_tol) feasible = false;
                const auto& u = lp.d[static_cast<std::size_t>(j)];
                if (u.is_finite() && v > u.value() + feas_tol) feasible = false;
                x[j] = v;
            }
            if (!feasible) continue;
            out.push_back({x, lp.c.dot(x), basic});
        }
    });
    return out;
}

/// Cheapest vertex, or nullopt if the LP has none (infeasible).
inline std::optional<Vertex> best_vertex(const AssembledLp& lp) {
    std::optional<Vertex> best;
    for (Vertex& v : enumerate_vertices(lp)) {
        if (!best || v.objective < best->objective) best = std::move(v);
    }
    return best;
}

}  // namespace share_sense::oracle
