#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrperc/config.hpp"
#include "lrperc/errors.hpp"
#include "lrperc/experiments.hpp"
#include "lrperc/fk.hpp"
#include "lrperc/oriented.hpp"
#include "lrperc/params.hpp"
#include "lrperc/renorm.hpp"

using json = nlohmann::json;
using namespace lrperc;

namespace {

struct FlatConfig {
    double beta = 2.0, p = 0.99, kappa = 1.0;
    double alpha = 1.5, alpha_prime = 1.4, delta = 2.1, eta = 0.05;
    long l1 = 10;
    int M = 1;
};

FlatConfig read_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open config file: " + path);
    FlatConfig c;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "beta")
                c.beta = std::stod(val);
            else if (key == "p")
                c.p = std::stod(val);
            else if (key == "kappa")
                c.kappa = std::stod(val);
            else if (key == "alpha")
                c.alpha = std::stod(val);
            else if (key == "alpha_prime")
                c.alpha_prime = std::stod(val);
            else if (key == "delta")
                c.delta = std::stod(val);
            else if (key == "eta")
                c.eta = std::stod(val);
            else if (key == "l1")
                c.l1 = std::stol(val);
            else if (key == "M")
                c.M = std::stoi(val);
            else
                throw ParseError("unknown config key: " + key);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad value for key " + key + ": " + val);
        }
    }
    return c;
}

ModelParams model_of(const FlatConfig& c) {
    ModelParams m{c.beta, c.p, c.kappa};
    m.validate();
    return m;
}

ScaleParams scales_of(const FlatConfig& c) {
    return ScaleParams::make(c.l1, c.alpha, c.alpha_prime, c.delta, c.eta, c.M);
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("LRPERC_SEED"))
        return std::stoull(env);
    return cli_seed;
}

json pedestal_json(const Pedestal& ped) {
    json bridges = json::array();
    for (const auto& br : ped.bridges)
        bridges.push_back({{"x", br.x}, {"y", br.y}, {"level", br.level}});
    return {{"vertices", ped.vertices}, {"bridges", bridges}};
}

json itinerary_json(const Itinerary& it) {
    json levels = json::array();
    for (const auto& blocks : it.levels) {
        json jblocks = json::array();
        for (const auto& blk : blocks) {
            json jb = {
                {"level", blk.level},
                {"interval", {blk.a, blk.b}},
                {"tag", blk.tag == Tag::Good ? "G" : blk.tag == Tag::Hopeful ? "H" : "B"},
                {"final", blk.final_good ? "G" : "B"},
                {"defects", blk.defects},
            };
            if (blk.final_good)
                jb["pedestal"] = pedestal_json(blk.pedestal);
            if (blk.has_defected_part)
                jb["defected_part"] = {blk.dp_lo, blk.dp_hi};
            jb["bridged"] = blk.bridged;
            jblocks.push_back(std::move(jb));
        }
        levels.push_back(std::move(jblocks));
    }
    json log = json::array();
    for (const auto& ev : it.log)
        log.push_back({{"level", ev.level}, {"kind", ev.kind}, {"position", ev.position}});
    return {{"levels", levels}, {"adjustments", log}};
}

json report_json(const ExperimentReport& rep) {
    json j = {
        {"name", rep.name},
        {"estimate", rep.estimate},
        {"ci_low", rep.ci_low},
        {"ci_high", rep.ci_high},
        {"successes", rep.successes},
        {"trials", rep.trials},
        {"master_seed", rep.master_seed},
        {"approximate", rep.approximate},
        {"params",
         {{"beta", rep.model.beta},
          {"p", rep.model.p},
          {"kappa", rep.model.kappa},
          {"alpha", rep.scales.alpha},
          {"alpha_prime", rep.scales.alpha_prime},
          {"delta", rep.scales.delta},
          {"eta", rep.scales.eta},
          {"l1", rep.scales.l1},
          {"M", rep.scales.M},
          {"L", rep.scales.L()}}},
    };
    if (rep.reference_bound) {
        j["reference_bound"] = *rep.reference_bound;
        j["bound_formula"] = rep.bound_formula;
    }
    if (rep.name == "origin") {
        j["shielding_trials"] = rep.shielding_trials;
        j["shielding_successes"] = rep.shielding_successes;
    }
    return j;
}

std::string report_csv(const ExperimentReport& rep) {
    std::ostringstream os;
    os << "name,p,beta,kappa,L,estimate,ci_low,ci_high,trials,reference_bound\n";
    os << rep.name << "," << rep.model.p << "," << rep.model.beta << ","
       << rep.model.kappa << "," << rep.scales.L() << "," << rep.estimate << ","
       << rep.ci_low << "," << rep.ci_high << "," << rep.trials << ","
       << (rep.reference_bound ? std::to_string(*rep.reference_bound) : "") << "\n";
    return os.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw DomainError("cannot open output file: " + out_path);
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"long-range percolation / random-cluster simulator"};
    app.require_subcommand(1);

    std::string cfg_path, in_path, out_path, format = "json", exp_name;
    std::uint64_t seed = 1, trials = 10000;
    int threads = 1, level = 1;
    long L_override = 0, reach_from = 0;
    bool want_reach = false;
    std::string mode = "skip";
    long sweeps = 1000000;

    auto* cmd_params = app.add_subcommand("params", "parameter utilities");
    auto* cmd_check = cmd_params->add_subcommand("check", "feasibility report");
    cmd_check->add_option("-c,--config", cfg_path)->required();

    auto* cmd_sample = app.add_subcommand("sample", "draw a configuration");
    cmd_sample->add_option("-c,--config", cfg_path)->required();
    cmd_sample->add_option("-o,--out", out_path);
    cmd_sample->add_option("--seed", seed);
    cmd_sample->add_option("--mode", mode)->check(CLI::IsMember({"naive", "skip"}));
    cmd_sample->add_option("-L", L_override);

    auto* cmd_analyze = app.add_subcommand("analyze", "renormalize a configuration");
    cmd_analyze->add_option("-c,--config", cfg_path)->required();
    cmd_analyze->add_option("-i,--in", in_path)->required();
    cmd_analyze->add_option("-o,--out", out_path);
    auto* reach_opt = cmd_analyze->add_option("--reach", reach_from,
                                              "also print the oriented reach set of a vertex");

    auto* cmd_exp = app.add_subcommand("experiment", "Monte Carlo estimates");
    cmd_exp->add_option("name", exp_name)
        ->required()
        ->check(CLI::IsMember({"defect", "repair", "span", "origin"}));
    cmd_exp->add_option("-c,--config", cfg_path)->required();
    cmd_exp->add_option("--trials", trials);
    cmd_exp->add_option("--seed", seed);
    cmd_exp->add_option("--threads", threads);
    cmd_exp->add_option("--level", level);
    cmd_exp->add_option("--out", out_path);
    cmd_exp->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* cmd_oracle = app.add_subcommand("oracle", "exact oracles");
    auto* cmd_tiny = cmd_oracle->add_subcommand("tiny", "exact vs MCMC on a tiny volume");
    cmd_tiny->add_option("-c,--config", cfg_path)->required();
    cmd_tiny->add_option("--sweeps", sweeps);
    cmd_tiny->add_option("--seed", seed);
    cmd_tiny->add_option("-L", L_override);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        const std::uint64_t master = effective_seed(seed);
        if (cmd_check->parsed()) {
            const auto c = read_flat_config(cfg_path);
            const auto scales = scales_of(c);
            model_of(c);
            const auto rep = check_feasibility(c.beta, c.alpha, c.alpha_prime, c.delta, c.eta);
            json lines = json::array();
            for (const auto& l : rep.lines)
                lines.push_back({{"inequality", l.name}, {"lhs", l.lhs}, {"rhs", l.rhs}, {"ok", l.ok}});
            json jcaps = json::array();
            for (int k = 1; k <= scales.M; ++k)
                jcaps.push_back(scales.jump_cap(k));
            json j = {{"feasible", rep.feasible},
                      {"inequalities", lines},
                      {"scales", scales.scales},
                      {"jump_caps", jcaps},
                      {"p_threshold", p_threshold(c.kappa, c.l1, c.delta)}};
            emit(out_path, j.dump(2) + "\n");
        } else if (cmd_sample->parsed()) {
            const auto c = read_flat_config(cfg_path);
            const auto model = model_of(c);
            const long L = L_override > 0 ? L_override : scales_of(c).L();
            const auto config = sample_configuration(
                model, L, master, mode == "skip" ? SampleMode::skip : SampleMode::naive);
            std::ostringstream os;
            write_configuration(os, config);
            emit(out_path, os.str());
        } else if (cmd_analyze->parsed()) {
            const auto c = read_flat_config(cfg_path);
            const auto scales = scales_of(c);
            std::ifstream in(in_path);
            if (!in)
                throw ParseError("cannot open configuration: " + in_path);
            const auto config = read_configuration(in);
            json j = itinerary_json(run_renormalization(config, scales));
            if (reach_opt->count() > 0 || want_reach) {
                const auto rs = oriented_reachable_set(config, reach_from);
                j["reach"] = {{"source", rs.source}, {"members", rs.members}};
            }
            emit(out_path, j.dump(2) + "\n");
        } else if (cmd_exp->parsed()) {
            const auto c = read_flat_config(cfg_path);
            const auto model = model_of(c);
            const auto scales = scales_of(c);
            ExperimentReport rep;
            if (exp_name == "defect")
                rep = estimate_defect_probability(model, scales, level, trials, master, threads);
            else if (exp_name == "repair")
                rep = estimate_repair_probability(model, scales, level, trials, master, threads);
            else if (exp_name == "span")
                rep = estimate_span_probability(model, scales, trials, master, threads);
            else
                rep = estimate_origin_percolation(model, scales, trials, master, threads);
            emit(out_path, format == "csv" ? report_csv(rep) : report_json(rep).dump(2) + "\n");
        } else if (cmd_tiny->parsed()) {
            const auto c = read_flat_config(cfg_path);
            const auto model = model_of(c);
            const long L = L_override > 0 ? L_override : 1;
            const auto exact = fk_exact_tiny(model, -L, L, Boundary::free_);
            FkChain chain(model, -L, L, Boundary::free_, master);
            std::vector<std::uint64_t> hist(1ull << exact.interior_edge_count(), 0);
            for (long s = 0; s < sweeps; ++s) {
                chain.sweep();
                ++hist[chain.interior_mask()];
            }
            const auto dist = exact.interior_distribution();
            double tv = 0.0;
            json states = json::array();
            for (std::size_t m = 0; m < dist.size(); ++m) {
                const double emp = static_cast<double>(hist[m]) / static_cast<double>(sweeps);
                tv += 0.5 * std::abs(emp - dist[m]);
                states.push_back({{"state", m}, {"exact", dist[m]}, {"empirical", emp}});
            }
            json j = {{"L", L}, {"sweeps", sweeps}, {"total_variation", tv}, {"states", states}};
            emit(out_path, j.dump(2) + "\n");
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
