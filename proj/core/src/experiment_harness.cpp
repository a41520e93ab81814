#include "share_sense/experiment_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <random>
#include <thread>

#include "share_sense/duality.hpp"
#include "share_sense/error.hpp"
#include "share_sense/new_agent.hpp"

namespace share_sense {
namespace {

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidInput, std::string("invalid cargo config: ") + what);
}

double uniform_between(StreamRng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

}  // namespace

void CargoConfig::validate() const {
    require(m >= 1, "m must be at least 1");
    require(trials >= 0, "trials must be non-negative");
    require(arrival_count() >= 1, "M must be at least 1");
    require(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
    require(p_min <= p_max, "p_min must not exceed p_max");
    require(rho_min > 0.0 && rho_min <= rho_max, "densities must be positive with rho_min <= rho_max");
    if (demand == DemandShape::kUniform) {
        require(d_min >= 0.0 && d_min < d_max, "uniform demand needs 0 <= d_min < d_max");
    } else {
        require(sigma2 > 0.0, "truncated gaussian demand needs sigma2 > 0");
    }
    require(weight_capacity > 0.0, "W must be positive");
    require(volume_capacity > 0.0, "V must be positive");
    require(audit_stride >= 0, "audit_stride must be non-negative");
}

AgentProfile sample_cargo_agent(const CargoConfig& config, StreamRng& rng) {
    const double price = uniform_between(rng, config.p_min, config.p_max);
    const double density = uniform_between(rng, config.rho_min, config.rho_max);
    double demand = 0.0;
    if (config.demand == DemandShape::kUniform) {
        demand = uniform_between(rng, config.d_min, config.d_max);
    } else {
        std::normal_distribution<double> gauss(config.mu, std::sqrt(config.sigma2));
        do {
            demand = gauss(rng);
        } while (!(demand > 0.0));
    }

    AgentProfile agent;
    agent.cost = Eigen::VectorXd::Constant(1, -price);
    agent.upper = {ExtendedReal(demand)};
    agent.usage.resize(2, 1);
    agent.usage << 1.0, 1.0 / density;
    return agent;
}

SharingProblem cargo_problem(const CargoConfig& config, std::vector<AgentProfile> agents) {
    SharingProblem problem;
    problem.resources = 2;
    problem.inequality_rows = 2;
    problem.budget = Eigen::Vector2d(config.weight_capacity, config.volume_capacity);
    problem.agents = std::move(agents);
    return problem;
}

TrialRecord run_trial(const CargoConfig& config, const EpsilonTable& table, int trial_index) {
    if (table.m() != config.m || table.beta() != config.beta) {
        throw Error(ErrorCode::kMismatchedSampleSize, "epsilon table does not match (m, beta) of the config");
    }
    const auto trial = static_cast<std::uint64_t>(trial_index);

    StreamRng batch_rng(config.seed, trial, 0, StreamPurpose::kAgentBatch);
    std::vector<AgentProfile> agents;
    agents.reserve(static_cast<std::size_t>(config.m));
    for (int i = 0; i < config.m; ++i) agents.push_back(sample_cargo_agent(config, batch_rng));

    const AssembledLp lp = assemble(cargo_problem(config, std::move(agents)));
    const PrimalSolution solution = solve_primal(lp);

    TrialRecord record;
    record.trial_index = trial_index;
    record.s_star = count_active_primal(solution);
    record.flags.degenerate = solution.flags.degenerate;
    record.flags.non_unique = solution.flags.non_unique;
    record.flags.rank_deficient = solution.flags.rank_deficient;
    const EpsilonRow& row = table.row(record.s_star);
    record.eps_low = row.eps_low;
    record.eps_high = row.eps_high;
    if (!solution.flags.clean()) return record;

    record.s_star_dual = count_active_dual(lp, certificate_from_basis(lp, solution.partition));
    if (record.s_star_dual != record.s_star) {
        record.flags.count_mismatch = true;
        return record;
    }

    const AgentSampler sampler = [&config, trial](std::uint64_t draw) {
        StreamRng rng(config.seed, trial, draw, StreamPurpose::kArrival);
        return sample_cargo_agent(config, rng);
    };
    EstimateOptions options;
    options.audit_stride = config.audit_stride;
    const ViolationEstimate estimate =
        empirical_violation_probability(solution, lp, sampler, config.arrival_count(), options);
    record.p_hat = estimate.p_hat;
    record.tie_count = estimate.ties;
    record.audited = estimate.audited;
    record.audit_mismatches = estimate.audit_mismatches;
    return record;
}

CampaignSummary summarize(const std::vector<TrialRecord>& records) {
    CampaignSummary s;
    s.total = static_cast<int>(records.size());
    for (const TrialRecord& r : records) {
        if (r.clean()) ++s.clean;
        else ++s.discarded;
        if (r.inside_band()) ++s.inside_band;
        s.ties += r.tie_count;
        s.audited += r.audited;
        s.audit_mismatches += r.audit_mismatches;
    }
    return s;
}

CampaignResult run_campaign(const CargoConfig& config, const EpsilonTable& table, unsigned threads) {
    config.validate();
    CampaignResult result;
    result.records.resize(static_cast<std::size_t>(config.trials));

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr failure;
    auto work = [&]() {
        for (int t = next++; t < config.trials && !failed; t = next++) {
            try {
                result.records[static_cast<std::size_t>(t)] = run_trial(config, table, t);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    if (threads == 0) threads = worker_count_from_env();
    threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::max(1, config.trials)));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    result.summary = summarize(result.records);
    return result;
}

CampaignResult run_campaign(const CargoConfig& config, unsigned threads) {
    config.validate();
    if (threads == 0) threads = worker_count_from_env();
    const EpsilonTable table = epsilon_table(config.m, config.beta, threads);
    return run_campaign(config, table, threads);
}

unsigned worker_count_from_env() {
    if (const char* env = std::getenv("SHARE_SENSE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << "trial_index,s_star,s_star_dual,p_hat,eps_low,eps_high,inside_band,tie_count,audited,"
           "audit_mismatches,degenerate,non_unique,rank_deficient,count_mismatch\n";
    out << std::setprecision(17);
    for (const TrialRecord& r : records) {
        out << r.trial_index << ',' << r.s_star << ',' << r.s_star_dual << ',';
        if (r.p_hat) out << *r.p_hat;
        out << ',' << r.eps_low << ',' << r.eps_high << ',' << (r.inside_band() ? 1 : 0) << ',' << r.tie_count
            << ',' << r.audited << ',' << r.audit_mismatches << ',' << r.flags.degenerate << ','
            << r.flags.non_unique << ',' << r.flags.rank_deficient << ',' << r.flags.count_mismatch << '\n';
    }
}

void write_epsilon_csv(std::ostream& out, const EpsilonTable& table) {
    out << "k,t_low,t_high,eps_low,eps_high,eps_explicit\n";
    out << std::setprecision(17);
    for (const EpsilonRow& row : table.rows()) {
        out << row.k << ',' << row.t_low << ',' << row.t_high << ',' << row.eps_low << ',' << row.eps_high << ','
            << row.eps_explicit << '\n';
    }
}

}  // namespace share_sense
