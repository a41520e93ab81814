#include "share_sense/duality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "share_sense/error.hpp"
#include "share_sense/simplex.hpp"
#include "share_sense/tolerances.hpp"

namespace share_sense {
namespace {

// Column layout of the dual LPs in standard bounded form.
//   rows: one per agent column j of the primal
//         sum_r A(r,j) lambda_r + nu_j - s_j = -c_j
//   plus, for the relaxed form, one per agent:
//         sum_j d_j nu_j - h_i + w_i = 0
struct DualLayout {
    std::vector<Eigen::Index> lambda_pos;  // per budget row
    std::vector<Eigen::Index> lambda_neg;  // -1 on inequality rows
    std::vector<Eigen::Index> nu;          // per primal column, -1 when fixed at 0
    std::vector<Eigen::Index> h;           // relaxed form only
    BoundedLp lp;
};

DualLayout transcribe(const AssembledLp& primal, bool relaxed) {
    const Eigen::Index p = primal.rows();
    const Eigen::Index agent_cols = primal.cols() - primal.slack_count;
    const Eigen::Index m = static_cast<Eigen::Index>(primal.agent_count());

    DualLayout layout;
    Eigen::Index next = 0;
    for (Eigen::Index r = 0; r < p; ++r) {
        layout.lambda_pos.push_back(next++);
        layout.lambda_neg.push_back(r < primal.slack_count ? -1 : next++);
    }
    layout.nu.assign(primal.cols(), -1);
    for (Eigen::Index j = primal.slack_count; j < primal.cols(); ++j) {
        if (primal.d[j].is_finite()) layout.nu[j] = next++;
    }
    const Eigen::Index surplus_start = next;
    next += agent_cols;
    if (relaxed) {
        for (Eigen::Index i = 0; i < m; ++i) layout.h.push_back(next++);
        next += m;  // epigraph slacks
    }

    const Eigen::Index rows = agent_cols + (relaxed ? m : 0);
    BoundedLp& lp = layout.lp;
    lp.A = Eigen::MatrixXd::Zero(rows, next);
    lp.b = Eigen::VectorXd::Zero(rows);
    lp.c = Eigen::VectorXd::Zero(next);
    lp.upper.assign(next, ExtendedReal::infinity());

    for (Eigen::Index r = 0; r < p; ++r) {
        lp.c[layout.lambda_pos[r]] = primal.b[r];
        if (layout.lambda_neg[r] >= 0) lp.c[layout.lambda_neg[r]] = -primal.b[r];
    }
    for (Eigen::Index k = 0; k < agent_cols; ++k) {
        const Eigen::Index j = primal.slack_count + k;
        for (Eigen::Index r = 0; r < p; ++r) {
            lp.A(k, layout.lambda_pos[r]) = primal.A(r, j);
            if (layout.lambda_neg[r] >= 0) lp.A(k, layout.lambda_neg[r]) = -primal.A(r, j);
        }
        if (layout.nu[j] >= 0) {
            lp.A(k, layout.nu[j]) = 1.0;
            if (!relaxed) lp.c[layout.nu[j]] = primal.d[j].value();
        }
        lp.A(k, surplus_start + k) = -1.0;
        lp.b[k] = -primal.c[j];
    }
    if (relaxed) {
        for (Eigen::Index i = 0; i < m; ++i) {
            const Eigen::Index row = agent_cols + i;
            const ColumnRange range = primal.agent_columns[i];
            for (Eigen::Index j = range.offset; j < range.offset + range.size; ++j) {
                if (layout.nu[j] >= 0) lp.A(row, layout.nu[j]) = primal.d[j].value();
            }
            lp.A(row, layout.h[i]) = -1.0;
            lp.A(row, layout.h[i] + m) = 1.0;
            lp.c[layout.h[i]] = 1.0;
        }
    }
    return layout;
}

Eigen::VectorXd extract_lambda(const DualLayout& layout, const Eigen::VectorXd& z) {
    Eigen::VectorXd lambda(static_cast<Eigen::Index>(layout.lambda_pos.size()));
    for (std::size_t r = 0; r < layout.lambda_pos.size(); ++r) {
        double v = z[layout.lambda_pos[r]];
        if (layout.lambda_neg[r] >= 0) v -= z[layout.lambda_neg[r]];
        lambda[static_cast<Eigen::Index>(r)] = v;
    }
    return lambda;
}

double reduced_gain(const AssembledLp& lp, const Eigen::VectorXd& lambda, Eigen::Index j) {
    return -lp.c[j] - lambda.dot(lp.A.col(j));
}

}  // namespace

Eigen::VectorXd relaxation_values(const AssembledLp& lp, const Eigen::VectorXd& nu) {
    Eigen::VectorXd h = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lp.agent_count()));
    for (std::size_t i = 0; i < lp.agent_count(); ++i) {
        const ColumnRange range = lp.agent_columns[i];
        for (Eigen::Index j = range.offset; j < range.offset + range.size; ++j) {
            h[static_cast<Eigen::Index>(i)] += times(nu[j], lp.d[j]);
        }
    }
    return h;
}

Eigen::VectorXd dual_closed_form(const AssembledLp& lp, const BasisPartition& partition) {
    const Eigen::MatrixXd basis = gather_columns(lp.A, partition.basic);
    if (basis.cols() != lp.rows()) throw Error(ErrorCode::kSingularBasis, "basis is not square");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis.transpose());
    if (!lu.isInvertible()) throw Error(ErrorCode::kSingularBasis, "basis matrix is singular");
    Eigen::VectorXd cost_basic(lp.rows());
    for (std::size_t k = 0; k < partition.basic.size(); ++k) {
        cost_basic[static_cast<Eigen::Index>(k)] = lp.c[partition.basic[k]];
    }
    return -lu.solve(cost_basic);
}

DualCertificate certificate_from_basis(const AssembledLp& lp, const BasisPartition& partition) {
    DualCertificate cert;
    cert.lambda = dual_closed_form(lp, partition);
    cert.nu = Eigen::VectorXd::Zero(lp.cols());
    for (Eigen::Index j = lp.slack_count; j < lp.cols(); ++j) {
        if (lp.d[j].is_finite()) cert.nu[j] = std::max(0.0, reduced_gain(lp, cert.lambda, j));
    }
    cert.h = relaxation_values(lp, cert.nu);
    cert.objective = -cert.lambda.dot(lp.b) - cert.h.sum();
    return cert;
}

DualCertificate solve_dual_full(const AssembledLp& lp) {
    const DualLayout layout = transcribe(lp, false);
    const SimplexResult result = solve_bounded(layout.lp);

    DualCertificate cert;
    cert.lambda = extract_lambda(layout, result.x);
    cert.nu = Eigen::VectorXd::Zero(lp.cols());
    for (Eigen::Index j = 0; j < lp.cols(); ++j) {
        if (layout.nu[j] >= 0) cert.nu[j] = result.x[layout.nu[j]];
    }
    cert.h = relaxation_values(lp, cert.nu);
    cert.objective = -result.objective;
    return cert;
}

RelaxedDual solve_dual_relaxed(const AssembledLp& lp) {
    const DualLayout layout = transcribe(lp, true);
    const SimplexResult result = solve_bounded(layout.lp);

    RelaxedDual dual;
    dual.lambda = extract_lambda(layout, result.x);
    dual.h.resize(static_cast<Eigen::Index>(layout.h.size()));
    for (std::size_t i = 0; i < layout.h.size(); ++i) {
        dual.h[static_cast<Eigen::Index>(i)] = result.x[layout.h[i]];
    }
    dual.objective = -result.objective;
    return dual;
}

SlacknessReport verify_complementary_slackness(const AssembledLp& lp, const PrimalSolution& primal,
                                               const DualCertificate& dual) {
    SlacknessReport report;
    auto note = [&report](bool& flag, const std::string& what, Eigen::Index j) {
        if (flag) {
            flag = false;
            if (report.first_failure.empty()) report.first_failure = what + " at index " + std::to_string(j);
        }
    };

    for (Eigen::Index j = 0; j < lp.cols(); ++j) {
        const double x = primal.x[j];
        const double nu = dual.nu[j];
        const double gain = reduced_gain(lp, dual.lambda, j);
        const double scale = std::max({1.0, std::abs(x), std::abs(nu), std::abs(gain)});
        const double tol = kTolAct * scale;

        double upper_product = 0.0;
        if (lp.d[j].is_finite()) {
            upper_product = std::abs((x - lp.d[j].value()) * nu);
        } else if (nu != 0.0) {
            upper_product = std::abs(nu) > tol ? std::numeric_limits<double>::infinity() : 0.0;
        }
        const double gain_product = std::abs((gain - nu) * x);
        report.max_residual = std::max({report.max_residual, upper_product, gain_product});
        if (upper_product > tol) note(report.upper_slackness, "upper-limit slackness", j);
        if (gain_product > tol) note(report.reduced_cost_slackness, "reduced-cost slackness", j);

        const bool at_zero = std::abs(x) <= kTolAct;
        const bool at_limit = lp.d[j].is_finite() && std::abs(x - lp.d[j].value()) <= kTolAct;
        const bool interior = !at_zero && !at_limit;
        if (interior != (std::abs(gain) <= kTolAct)) note(report.interior_equivalence, "interior equivalence", j);
        if (at_limit != (nu > kTolAct)) note(report.upper_equivalence, "upper-limit equivalence", j);
    }
    return report;
}

}  // namespace share_sense
