// share_sense command-line front end.
//
//   share_sense bounds      --m 100 --beta 1e-7 [--out table.csv]
//   share_sense solve       --instance problem.json
//   share_sense sensitivity --instance problem.json --beta 1e-7
//   share_sense simulate    --config cfg.json --out-dir results/
//
// Exit status is 0 on success; failures print {"error": ..., "message": ...}
// on stderr and exit non-zero.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "share_sense/duality.hpp"
#include "share_sense/error.hpp"
#include "share_sense/experiment_harness.hpp"
#include "share_sense/json_io.hpp"
#include "share_sense/lp_core.hpp"
#include "share_sense/sensitivity_bounds.hpp"

namespace fs = std::filesystem;
using namespace share_sense;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path.string());
    out << text;
}

// Degenerate or non-unique optima have no well-defined closed-form
// multipliers; fall back to the LP dual and say so.
std::string solve_report(const SharingProblem& problem, std::optional<double> beta) {
    const AssembledLp lp = assemble(problem);
    const PrimalSolution solution = solve_primal(lp);
    const bool closed_form = solution.flags.clean();
    const DualCertificate dual = closed_form ? certificate_from_basis(lp, solution.partition) : solve_dual_full(lp);

    std::optional<SensitivityInterval> interval;
    if (beta) {
        const int m = static_cast<int>(problem.agents.size());
        if (m < 1) throw Error(ErrorCode::kInvalidInput, "sensitivity needs at least one agent");
        interval = sensitivity_interval(solution, epsilon_table(m, *beta, worker_count_from_env()));
    }
    auto doc = nlohmann::json::parse(solution_to_json(solution, dual, interval, beta));
    doc["dual"]["source"] = closed_form ? "closed_form" : "dual_lp";
    doc["dual"]["closed_form_skipped"] = !closed_form;
    if (interval) doc["sensitivity"]["s_star_dual"] = count_active_dual(lp, dual);
    return doc.dump(2);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sensitivity of multi-agent LP allocations to newly arriving agents"};
    app.require_subcommand(1);

    int m = 0;
    double beta = 1e-7;
    std::string out_path;
    auto* bounds = app.add_subcommand("bounds", "Tabulate the epsilon interval endpoints for k = 0..m");
    bounds->add_option("--m", m, "Number of agents")->required()->check(CLI::PositiveNumber);
    bounds->add_option("--beta", beta, "Confidence parameter in (0,1)")->check(CLI::Range(0.0, 1.0));
    bounds->add_option("--out", out_path, "CSV output path (stdout if omitted)");

    std::string instance_path;
    auto* solve = app.add_subcommand("solve", "Solve an instance and dump primal and dual solutions");
    solve->add_option("--instance", instance_path, "Instance JSON")->required()->check(CLI::ExistingFile);

    auto* sensitivity = app.add_subcommand("sensitivity", "Solve an instance and report [eps_low, eps_high] at s*");
    sensitivity->add_option("--instance", instance_path, "Instance JSON")->required()->check(CLI::ExistingFile);
    sensitivity->add_option("--beta", beta, "Confidence parameter in (0,1)")->check(CLI::Range(0.0, 1.0));

    std::string config_path;
    std::string out_dir = "results";
    auto* simulate = app.add_subcommand("simulate", "Run a cargo-loading Monte Carlo campaign");
    simulate->add_option("--config", config_path, "Campaign config JSON")->required()->check(CLI::ExistingFile);
    simulate->add_option("--out-dir", out_dir, "Directory for trials.csv, epsilon.csv, summary.json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*bounds) {
            const EpsilonTable table = epsilon_table(m, beta, worker_count_from_env());
            if (out_path.empty()) {
                write_epsilon_csv(std::cout, table);
            } else {
                std::ofstream out(out_path);
                if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + out_path);
                write_epsilon_csv(out, table);
            }
        } else if (*solve) {
            std::cout << solve_report(parse_instance(read_file(instance_path)), std::nullopt) << '\n';
        } else if (*sensitivity) {
            std::cout << solve_report(parse_instance(read_file(instance_path)), beta) << '\n';
        } else if (*simulate) {
            const CargoConfig config = parse_cargo_config(read_file(config_path));
            const unsigned threads = worker_count_from_env();
            const EpsilonTable table = epsilon_table(config.m, config.beta, threads);
            const CampaignResult result = run_campaign(config, table, threads);

            fs::create_directories(out_dir);
            std::ostringstream trials;
            write_trials_csv(trials, result.records);
            write_file(fs::path(out_dir) / "trials.csv", trials.str());
            std::ostringstream eps;
            write_epsilon_csv(eps, table);
            write_file(fs::path(out_dir) / "epsilon.csv", eps.str());
            write_file(fs::path(out_dir) / "summary.json", summary_to_json(config, result.summary) + "\n");
            std::cout << summary_to_json(config, result.summary) << '\n';
        }
    } catch (const Error& e) {
        std::cerr << error_to_json(std::string(to_string(e.code())), e.what()) << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << error_to_json("Internal", e.what()) << '\n';
        return 3;
    }
    return 0;
}
