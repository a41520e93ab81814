// Acceptance suite. Run with no arguments for every criterion or with one or
// more criterion ids (1 .. 8, 7-explicit). Prints one PASS/FAIL line per
// criterion and exits non-zero if any failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oracles/vertex_enumeration.hpp"
#include "share_sense/duality.hpp"
#include "share_sense/experiment_harness.hpp"
#include "share_sense/lp_core.hpp"
#include "share_sense/new_agent.hpp"
#include "share_sense/sensitivity_bounds.hpp"
#include "support/random_instances.hpp"

using namespace share_sense;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Uniform demand ranges from mostly-slack to saturated at W = 20 t, V = 30 m^3.
const std::vector<std::pair<double, double>> kDemandRanges = {{20, 200}, {120, 300}, {220, 400}, {420, 600}};

CargoConfig cargo(int m, double beta, std::uint64_t seed) {
    CargoConfig cfg;
    cfg.m = m;
    cfg.trials = 100;
    cfg.beta = beta;
    cfg.weight_capacity = 20000;
    cfg.volume_capacity = 30;
    cfg.seed = seed;
    return cfg;
}

struct CoverageTally {
    int clean = 0;
    int inside = 0;
    int discarded = 0;
    std::int64_t audit_mismatches = 0;
    std::string per_campaign;
};

void tally(CoverageTally& t, const std::string& label, const CampaignSummary& s) {
    t.clean += s.clean;
    t.inside += s.inside_band;
    t.discarded += s.discarded;
    t.audit_mismatches += s.audit_mismatches;
    t.per_campaign += fmt(" %s:%d/%d", label.c_str(), s.inside_band, s.clean);
}

Outcome coverage_outcome(const CoverageTally& t) {
    const bool pass = t.clean > 0 && t.inside == t.clean && t.audit_mismatches == 0;
    return {pass, fmt("%d/%d clean trials inside band, %d discarded, %lld audit mismatches;%s", t.inside, t.clean,
                      t.discarded, static_cast<long long>(t.audit_mismatches), t.per_campaign.c_str())};
}

Outcome criterion_1() {
    const auto t0 = Clock::now();
    CoverageTally t;
    const CargoConfig base = cargo(100, 1e-7, 1001);
    const EpsilonTable table = epsilon_table(base.m, base.beta);
    for (const auto& [lo, hi] : kDemandRanges) {
        CargoConfig cfg = base;
        cfg.d_min = lo;
        cfg.d_max = hi;
        tally(t, fmt("U[%g,%g]", lo, hi), run_campaign(cfg, table).summary);
    }
    Outcome out = coverage_outcome(t);
    out.detail += fmt(" (%.1f s)", seconds_since(t0));
    return out;
}

double mean_width_at_ratios(const EpsilonTable& small, const EpsilonTable& large) {
    // Ratios k / m_small; the large table is read at the same ratio.
    const int ms = small.m();
    const int ml = large.m();
    double ws = 0.0;
    double wl = 0.0;
    for (int k = 0; k <= ms; ++k) {
        const int kl = static_cast<int>(std::lround(static_cast<double>(k) * ml / ms));
        ws += small.row(k).eps_high - small.row(k).eps_low;
        wl += large.row(kl).eps_high - large.row(kl).eps_low;
    }
    return wl / ws;
}

Outcome criterion_2() {
    const auto t0 = Clock::now();
    CoverageTally t;
    const CargoConfig base = cargo(200, 1e-7, 2002);
    const EpsilonTable table = epsilon_table(base.m, base.beta);
    for (const auto& [lo, hi] : kDemandRanges) {
        CargoConfig cfg = base;
        cfg.d_min = lo;
        cfg.d_max = hi;
        tally(t, fmt("U[%g,%g]", lo, hi), run_campaign(cfg, table).summary);

        cfg.demand = DemandShape::kTruncatedGaussian;
        cfg.mu = 0.5 * (lo + hi);
        cfg.sigma2 = 3096;
        tally(t, fmt("N(%g,3096)", cfg.mu), run_campaign(cfg, table).summary);
    }
    Outcome out = coverage_outcome(t);

    // Width comparison at matched s*/m, over the whole ratio grid and over the
    // ratios actually observed in the m = 200 campaigns' tables.
    const EpsilonTable small = epsilon_table(100, base.beta);
    const double ratio = mean_width_at_ratios(small, table);
    int narrower = 0;
    for (int k = 0; k <= 100; ++k) {
        const double ws = small.row(k).eps_high - small.row(k).eps_low;
        const double wl = table.row(2 * k).eps_high - table.row(2 * k).eps_low;
        narrower += wl < ws ? 1 : 0;
    }
    out.pass = out.pass && ratio < 1.0;
    out.detail += fmt("; mean width m=200 / m=100 at matched s*/m = %.4f (narrower at %d/101 ratios) (%.1f s)", ratio,
                      narrower, seconds_since(t0));
    return out;
}

Outcome criterion_3() {
    int mismatches = 0;
    double worst_obj = 0.0;
    double worst_x = 0.0;
    int non_unique = 0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        const AssembledLp lp = assemble(share_sense::testing::random_instance(seed));
        const PrimalSolution s = solve_primal(lp);
        const auto vertices = oracle::enumerate_vertices(lp);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& v : vertices) best = std::min(best, v.objective);
        const double obj_err = rel_err(s.objective, best);
        // Distance to the nearest optimal vertex, so alternative optima are not
        // held against the solver.
        double x_err = std::numeric_limits<double>::infinity();
        for (const auto& v : vertices) {
            if (rel_err(v.objective, best) <= 1e-8) x_err = std::min(x_err, (v.x - s.x).cwiseAbs().maxCoeff());
        }
        non_unique += s.flags.non_unique ? 1 : 0;
        worst_obj = std::max(worst_obj, obj_err);
        worst_x = std::max(worst_x, x_err);
        if (obj_err > 1e-8 || x_err > 1e-6) ++mismatches;
    }
    return {mismatches == 0, fmt("500 instances, %d mismatches, max rel objective error %.2e, max x error %.2e, "
                                 "%d with alternative optima",
                                 mismatches, worst_obj, worst_x, non_unique)};
}

struct DualCampaign {
    int clean = 0;
    int skipped = 0;
    double lambda_err = 0.0;
    double gap = 0.0;
    double h_err = 0.0;
    int count_mismatch = 0;
};

DualCampaign dual_campaign() {
    DualCampaign d;
    for (std::uint64_t seed = 100000; d.clean < 500; ++seed) {
        const AssembledLp lp = assemble(share_sense::testing::random_instance(seed));
        const PrimalSolution s = solve_primal(lp);
        if (!s.flags.clean()) {
            ++d.skipped;
            continue;
        }
        ++d.clean;
        const DualCertificate closed = certificate_from_basis(lp, s.partition);
        const DualCertificate full = solve_dual_full(lp);
        const RelaxedDual relaxed = solve_dual_relaxed(lp);
        d.lambda_err = std::max({d.lambda_err, (closed.lambda - full.lambda).cwiseAbs().maxCoeff(),
                                 (closed.lambda - relaxed.lambda).cwiseAbs().maxCoeff(),
                                 (full.lambda - relaxed.lambda).cwiseAbs().maxCoeff()});
        d.gap = std::max({d.gap, rel_err(full.objective, s.objective), rel_err(relaxed.objective, s.objective)});
        d.h_err = std::max(d.h_err, (relaxation_values(lp, full.nu) - relaxed.h).cwiseAbs().maxCoeff());
        if (count_active_primal(s) != count_active_dual(lp, closed)) ++d.count_mismatch;
    }
    return d;
}

Outcome criterion_4() {
    const DualCampaign d = dual_campaign();
    const bool pass = d.lambda_err <= 1e-6 && d.gap < 1e-7 && d.h_err <= 1e-7;
    return {pass, fmt("%d clean instances (%d flagged skipped), max lambda disagreement %.2e, max relative gap %.2e, "
                      "max |h - nu'd| %.2e",
                      d.clean, d.skipped, d.lambda_err, d.gap, d.h_err)};
}

Outcome criterion_5() {
    const DualCampaign d = dual_campaign();
    share_sense::testing::InstanceShape shape;
    shape.infinite_limits = true;
    shape.equalities_only = true;
    int over = 0;
    int worst = 0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        const AssembledLp lp = assemble(share_sense::testing::random_instance(seed, shape));
        const PrimalSolution s = solve_primal(lp);
        const int s_star = count_active_primal(s);
        worst = std::max(worst, s_star - static_cast<int>(lp.rows()));
        if (s_star > lp.rows()) ++over;
    }
    return {d.count_mismatch == 0 && over == 0,
            fmt("primal/dual count mismatches %d of %d clean instances; s* > p on %d of 500 unbounded-limit "
                "instances (max s* - p = %d)",
                d.count_mismatch, d.clean, over, worst)};
}

Outcome criterion_6() {
    const auto t0 = Clock::now();
    int pairs = 0;
    int disagreements = 0;
    int ties = 0;
    int forms_disagree = 0;
    for (std::uint64_t seed = 200000; pairs < 10000; ++seed) {
        const AssembledLp lp = assemble(share_sense::testing::random_instance(seed));
        const PrimalSolution s = solve_primal(lp);
        if (!s.flags.clean()) continue;
        StreamRng rng(seed, 0, 0, StreamPurpose::kArrival);
        for (int a = 0; a < 20 && pairs < 10000; ++a, ++pairs) {
            AgentProfile newcomer;
            const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 2);
            newcomer.cost.resize(n);
            newcomer.usage.resize(lp.rows(), n);
            for (Eigen::Index j = 0; j < n; ++j) {
                newcomer.cost[j] = share_sense::testing::uniform(rng, -2.0, 1.0);
                newcomer.upper.push_back(rng.uniform() < 0.2 ? ExtendedReal::infinity()
                                                             : ExtendedReal(share_sense::testing::uniform(rng, 0.5, 2.0)));
                for (Eigen::Index r = 0; r < lp.rows(); ++r) newcomer.usage(r, j) = share_sense::testing::uniform(rng, 0.1, 1.0);
            }
            const ArrivalVerdict v = changes_solution(s, lp, newcomer);
            ties += v.tie ? 1 : 0;
            forms_disagree += v.forms_agree ? 0 : 1;
            if (v.changes != resolve_changes(s, solve_augmented(lp, newcomer))) ++disagreements;
        }
    }
    const double elapsed = seconds_since(t0);
    return {disagreements == 0 && forms_disagree == 0 && elapsed < 60.0,
            fmt("%d pairs, %d certificate/re-solve disagreements, %d ties, %d reduced-cost/multiplier form "
                "disagreements, %.2f s",
                pairs, disagreements, ties, forms_disagree, elapsed)};
}

const std::vector<int> kEngineM = {1, 10, 100, 250, 500, 1000};
const std::vector<double> kEngineBeta = {1e-4, 1e-6, 1e-8};

Outcome criterion_7() {
    double worst_residual = 0.0;
    int order_violations = 0;
    int top_violations = 0;
    double slowest_1000 = 0.0;
    for (int m : kEngineM) {
        for (double beta : kEngineBeta) {
            const auto t0 = Clock::now();
            const EpsilonTable table = epsilon_table(m, beta);
            if (m == 1000) slowest_1000 = std::max(slowest_1000, seconds_since(t0));
            for (const EpsilonRow& row : table.rows()) {
                worst_residual = std::max(worst_residual, row.residual_high);
                if (row.k < m) worst_residual = std::max(worst_residual, row.residual_low);
                if (!(0.0 <= row.eps_low && row.eps_low <= row.eps_high && row.eps_high <= 1.0)) ++order_violations;
            }
            if (table.row(m).eps_high != 1.0) ++top_violations;
        }
    }
    return {worst_residual < 1e-10 && order_violations == 0 && top_violations == 0 && slowest_1000 < 30.0,
            fmt("max normalized residual %.2e, ordering violations %d, eps_high(m) != 1 in %d tables, "
                "slowest m=1000 table %.1f s",
                worst_residual, order_violations, top_violations, slowest_1000)};
}

Outcome criterion_7_explicit() {
    int violations = 0;
    int checked = 0;
    std::string examples;
    for (int m : kEngineM) {
        for (double beta : kEngineBeta) {
            const EpsilonTable table = epsilon_table(m, beta);
            int here = 0;
            for (int k = 1; k <= m; ++k) {
                ++checked;
                const EpsilonRow& row = table.row(k);
                if (row.eps_explicit < row.eps_high) {
                    ++violations;
                    if (here++ == 0 && examples.size() < 300) {
                        examples += fmt(" m=%d beta=%g k=%d: explicit %.12g < eps_high %.12g;", m, beta, k,
                                        row.eps_explicit, row.eps_high);
                    }
                }
            }
        }
    }
    return {violations == 0, fmt("explicit bound below eps_high at %d of %d (m, beta, k) points;%s", violations,
                                 checked, examples.c_str())};
}

Outcome criterion_8() {
    const std::vector<int> ms = {250, 500, 1000};
    std::map<std::pair<int, double>, double> max_width;
    for (int m : ms) {
        for (double beta : kEngineBeta) {
            const EpsilonTable table = epsilon_table(m, beta);
            double w = 0.0;
            for (const EpsilonRow& row : table.rows()) w = std::max(w, row.eps_high - row.eps_low);
            max_width[{m, beta}] = w;
        }
    }
    bool moderate = true;
    bool narrows = true;
    std::string detail;
    for (int m : ms) {
        const double w4 = max_width[{m, 1e-4}];
        const double w8 = max_width[{m, 1e-8}];
        moderate = moderate && w8 <= 2.0 * w4;
        detail += fmt(" m=%d: width %.4f (1e-4) %.4f (1e-6) %.4f (1e-8);", m, w4, max_width[{m, 1e-6}], w8);
    }
    for (double beta : kEngineBeta) {
        for (std::size_t i = 1; i < ms.size(); ++i) {
            narrows = narrows && max_width[{ms[i], beta}] < max_width[{ms[i - 1], beta}];
        }
    }
    return {moderate && narrows, fmt("width(1e-8) <= 2 width(1e-4): %s, narrows with m: %s;%s", moderate ? "yes" : "no",
                                     narrows ? "yes" : "no", detail.c_str())};
}

const std::vector<std::pair<std::string, std::pair<const char*, std::function<Outcome()>>>> kCriteria = {
    {"1", {"band coverage, m=100 uniform demand", criterion_1}},
    {"2", {"band coverage, m=200 uniform and truncated gaussian; narrower bands", criterion_2}},
    {"3", {"simplex vs vertex enumeration", criterion_3}},
    {"4", {"closed-form, full and relaxed duals agree", criterion_4}},
    {"5", {"primal and dual active counts; s* <= p with infinite limits", criterion_5}},
    {"6", {"arrival certificate vs re-solve", criterion_6}},
    {"7", {"epsilon engine residuals, ordering, runtime", criterion_7}},
    {"7-explicit", {"explicit bound dominates eps_high for k >= 1", criterion_7_explicit}},
    {"8", {"band shape across m and beta", criterion_8}},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> wanted(argv + 1, argv + argc);
    int failures = 0;
    int ran = 0;
    for (const auto& [id, entry] : kCriteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
        ++ran;
        Outcome out{false, ""};
        try {
            out = entry.second();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %s (%s): %s\n", out.pass ? "PASS" : "FAIL", id.c_str(), entry.first,
                    out.detail.c_str());
        std::fflush(stdout);
        failures += out.pass ? 0 : 1;
    }
    if (ran == 0) {
        std::fprintf(stderr, "unknown criterion\n");
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
