#include "share_sense/json_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

#include "share_sense/error.hpp"

namespace share_sense {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kInvalidInput, what); }

ExtendedReal limit_from_json(const json& v) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "infinity") return ExtendedReal::infinity();
        bad("upper limit string must be \"inf\", got \"" + s + "\"");
    }
    if (!v.is_number()) bad("upper limit must be a number or \"inf\"");
    return ExtendedReal(v.get<double>());
}

json limit_to_json(ExtendedReal v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Eigen::VectorXd vector_from_json(const json& v, const char* name) {
    if (!v.is_array()) bad(std::string(name) + " must be an array");
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) bad(std::string(name) + " entries must be numbers");
        out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
    }
    return out;
}

json indices_to_json(const std::vector<Eigen::Index>& v) {
    json out = json::array();
    for (Eigen::Index i : v) out.push_back(i);
    return out;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

SharingProblem parse_instance(const std::string& text) {
    const json doc = parse(text);
    try {
        SharingProblem problem;
        problem.resources = doc.at("p").get<Eigen::Index>();
        problem.inequality_rows = doc.at("n0").get<Eigen::Index>();
        problem.budget = vector_from_json(doc.at("b"), "b");
        for (const json& a : doc.at("agents")) {
            AgentProfile agent;
            agent.cost = vector_from_json(a.at("c"), "c");
            for (const json& d : a.at("d")) agent.upper.push_back(limit_from_json(d));
            const json& rows = a.at("A");
            if (!rows.is_array()) bad("A must be an array of rows");
            const auto n = agent.cost.size();
            agent.usage.resize(static_cast<Eigen::Index>(rows.size()), n);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const Eigen::VectorXd row = vector_from_json(rows[r], "A row");
                if (row.size() != n) throw Error(ErrorCode::kDimensionMismatch, "A row length differs from n");
                agent.usage.row(static_cast<Eigen::Index>(r)) = row.transpose();
            }
            problem.agents.push_back(std::move(agent));
        }
        return problem;
    } catch (const json::exception& e) {
        bad(std::string("bad instance: ") + e.what());
    }
}

std::string instance_to_json(const SharingProblem& problem) {
    json doc;
    doc["p"] = problem.resources;
    doc["n0"] = problem.inequality_rows;
    doc["b"] = vector_to_json(problem.budget);
    doc["agents"] = json::array();
    for (const AgentProfile& agent : problem.agents) {
        json a;
        a["c"] = vector_to_json(agent.cost);
        a["d"] = json::array();
        for (const auto& u : agent.upper) a["d"].push_back(limit_to_json(u));
        a["A"] = json::array();
        for (Eigen::Index r = 0; r < agent.usage.rows(); ++r) a["A"].push_back(vector_to_json(agent.usage.row(r)));
        doc["agents"].push_back(std::move(a));
    }
    return doc.dump(2);
}

std::string solution_to_json(const PrimalSolution& solution, const std::optional<DualCertificate>& dual,
                             const std::optional<SensitivityInterval>& interval, std::optional<double> beta) {
    json doc;
    doc["x"] = vector_to_json(solution.x);
    doc["objective"] = solution.objective;
    doc["partition"] = {{"B", indices_to_json(solution.partition.basic)},
                        {"N_low", indices_to_json(solution.partition.at_lower)},
                        {"N_up", indices_to_json(solution.partition.at_upper)}};
    doc["flags"] = {{"degenerate", solution.flags.degenerate},
                    {"non_unique", solution.flags.non_unique},
                    {"rank_deficient", solution.flags.rank_deficient}};
    if (dual) {
        doc["dual"] = {{"lambda", vector_to_json(dual->lambda)},
                       {"nu", vector_to_json(dual->nu)},
                       {"h", vector_to_json(dual->h)},
                       {"objective", dual->objective}};
    }
    if (interval) {
        doc["sensitivity"] = {{"s_star", interval->s_star},
                              {"eps_low", interval->eps_low},
                              {"eps_high", interval->eps_high}};
        if (beta) doc["sensitivity"]["beta"] = *beta;
    }
    return doc.dump(2);
}

CargoConfig parse_cargo_config(const std::string& text) {
    const json doc = parse(text);
    try {
        CargoConfig cfg;
        cfg.m = doc.at("m").get<int>();
        cfg.trials = doc.value("trials", cfg.trials);
        if (doc.contains("M")) cfg.arrivals = doc.at("M").get<std::int64_t>();
        cfg.beta = doc.value("beta", cfg.beta);
        cfg.p_min = doc.value("p_min", cfg.p_min);
        cfg.p_max = doc.value("p_max", cfg.p_max);
        cfg.rho_min = doc.value("rho_min", cfg.rho_min);
        cfg.rho_max = doc.value("rho_max", cfg.rho_max);
        const json& dist = doc.at("d_dist");
        const auto type = dist.at("type").get<std::string>();
        if (type == "uniform") {
            cfg.demand = DemandShape::kUniform;
            cfg.d_min = dist.at("d_min").get<double>();
            cfg.d_max = dist.at("d_max").get<double>();
        } else if (type == "truncated_gaussian") {
            cfg.demand = DemandShape::kTruncatedGaussian;
            cfg.mu = dist.at("mu").get<double>();
            cfg.sigma2 = dist.at("sigma2").get<double>();
        } else {
            bad("d_dist.type must be \"uniform\" or \"truncated_gaussian\"");
        }
        cfg.weight_capacity = doc.at("W").get<double>();
        cfg.volume_capacity = doc.at("V").get<double>();
        cfg.seed = doc.value("seed", std::uint64_t{0});
        cfg.audit_stride = doc.value("audit_stride", cfg.audit_stride);
        cfg.validate();
        return cfg;
    } catch (const json::exception& e) {
        bad(std::string("bad config: ") + e.what());
    }
}

std::string cargo_config_to_json(const CargoConfig& cfg) {
    json doc;
    doc["m"] = cfg.m;
    doc["trials"] = cfg.trials;
    doc["M"] = cfg.arrival_count();
    doc["beta"] = cfg.beta;
    doc["p_min"] = cfg.p_min;
    doc["p_max"] = cfg.p_max;
    doc["rho_min"] = cfg.rho_min;
    doc["rho_max"] = cfg.rho_max;
    if (cfg.demand == DemandShape::kUniform) {
        doc["d_dist"] = {{"type", "uniform"}, {"d_min", cfg.d_min}, {"d_max", cfg.d_max}};
    } else {
        doc["d_dist"] = {{"type", "truncated_gaussian"}, {"mu", cfg.mu}, {"sigma2", cfg.sigma2}};
    }
    doc["W"] = cfg.weight_capacity;
    doc["V"] = cfg.volume_capacity;
    doc["seed"] = cfg.seed;
    doc["audit_stride"] = cfg.audit_stride;
    return doc.dump(2);
}

std::string summary_to_json(const CargoConfig& config, const CampaignSummary& s) {
    json doc;
    doc["m"] = config.m;
    doc["beta"] = config.beta;
    doc["M"] = config.arrival_count();
    doc["trials"] = s.total;
    doc["clean_trials"] = s.clean;
    doc["inside_band"] = s.inside_band;
    doc["discarded"] = s.discarded;
    doc["coverage"] = s.clean > 0 ? static_cast<double>(s.inside_band) / s.clean : 1.0;
    doc["ties"] = s.ties;
    doc["audited_arrivals"] = s.audited;
    doc["audit_mismatches"] = s.audit_mismatches;
    return doc.dump(2);
}

std::string error_to_json(const std::string& code, const std::string& message) {
    return json{{"error", code}, {"message", message}}.dump();
}

}  // namespace share_sense
