// exrouter: routing planner and two-excitation transfer simulator.

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "exrouter/fermion.hpp"
#include "exrouter/planner.hpp"
#include "exrouter/series.hpp"
#include "exrouter/spin.hpp"
#include "verify.hpp"

using namespace exrouter;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitEngine = 3;

struct RunConfig {
    NetworkSpec network;
    std::string engine = "fermion";
    double t_max = 0.0; // 0 = default 50/J0
    int samples = 2001;
    std::string sweep_param;
    std::vector<double> sweep_values;
    std::string output;
    double tol = 1e-8;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunConfig load_config(const std::string& path) {
    const nlohmann::json j = nlohmann::json::parse(read_file(path));
    static const std::set<std::string> known = {"network", "engine", "time_grid",
                                                "sweep",   "output", "tol"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw std::invalid_argument("unknown config key: " + key);

    RunConfig config;
    config.network = spec_from_json(j.at("network").dump());
    config.engine = j.value("engine", "fermion");
    if (j.contains("time_grid")) {
        config.t_max = j["time_grid"].value("t_max", 0.0);
        config.samples = j["time_grid"].value("samples", 2001);
    }
    if (j.contains("sweep")) {
        config.sweep_param = j["sweep"].at("parameter").get<std::string>();
        config.sweep_values = j["sweep"].at("values").get<std::vector<double>>();
    }
    config.output = j.value("output", "");
    config.tol = j.value("tol", 1e-8);
    return config;
}

int& target_contact(NetworkSpec& spec) {
    for (auto it = spec.receivers.rbegin(); it != spec.receivers.rend(); ++it)
        if (it->active) return it->contact;
    throw NoActiveReceiver("no target receiver designated");
}

double& target_J_r(NetworkSpec& spec) {
    for (auto it = spec.receivers.rbegin(); it != spec.receivers.rend(); ++it)
        if (it->active) return it->J_r;
    throw NoActiveReceiver("no target receiver designated");
}

FidelitySeries run_engine(const RunConfig& config, const std::vector<double>& grid) {
    if (config.engine == "spin")
        return spin_transfer_probability(config.network, grid, config.tol);
    if (config.engine != "fermion")
        throw std::invalid_argument("unknown engine: " + config.engine);

    if (const char* cache_dir = std::getenv("EXROUTER_CACHE_DIR")) {
        const Eigen::MatrixXd adj = to_adjacency(config.network);
        const auto path =
            std::filesystem::path(cache_dir) / (adjacency_cache_key(adj) + ".bin");
        if (auto cached = load_decomposition(path.string()))
            return transfer_fidelity(config.network, grid, *cached);
        const auto decomp = eigendecompose(adj);
        std::filesystem::create_directories(cache_dir);
        save_decomposition(path.string(), decomp);
        return transfer_fidelity(config.network, grid, decomp);
    }
    return transfer_fidelity(config.network, grid);
}

std::pair<double, double> peak_and_time(const FidelitySeries& series) {
    const auto it = std::max_element(series.values.begin(), series.values.end());
    return {*it, series.times[it - series.values.begin()]};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path);
    out << text;
}

int cmd_plan(int n_w, int s, const std::string& out_text, const std::string& out_json) {
    const auto plan = routing_table(n_w, s);
    const auto text = plan_to_text(plan);
    std::fputs(text.c_str(), stdout);
    if (!out_text.empty()) write_text(out_text, text);
    if (!out_json.empty()) write_text(out_json, plan_to_json(plan) + "\n");
    return 0;
}

int cmd_simulate(const RunConfig& config) {
    const double t_max = config.t_max > 0.0 ? config.t_max : 50.0 / config.network.J0;
    const auto report = validate(config.network);
    if (!report.valid()) throw std::invalid_argument("invalid network: " + report.violations.front());

    const auto series = run_engine(config, uniform_grid(t_max, config.samples));
    const std::string out = config.output.empty() ? "series.csv" : config.output;
    write_series_csv(out, series);
    const auto [peak, t_peak] = peak_and_time(series);
    std::printf("peak=%.6f t_peak=%.6g csv=%s\n", peak, t_peak, out.c_str());
    return 0;
}

int cmd_sweep(const RunConfig& config, int threads) {
    if (config.sweep_param.empty() || config.sweep_values.empty())
        throw std::invalid_argument("sweep requires a parameter and a nonempty values list");
    if (config.sweep_param != "contact" && config.sweep_param != "J_s")
        throw std::invalid_argument("unknown sweep parameter: " + config.sweep_param);

    const double t_max = config.t_max > 0.0 ? config.t_max : 50.0 / config.network.J0;
    const auto grid = uniform_grid(t_max, config.samples);

    std::vector<RunConfig> points;
    for (double value : config.sweep_values) {
        RunConfig point = config;
        if (config.sweep_param == "contact") {
            const int contact = static_cast<int>(value);
            if (contact != value || contact < 1 || contact > point.network.n_w)
                throw std::invalid_argument("sweep contact out of range");
            target_contact(point.network) = contact;
        } else {
            // routing address: the target's J_r follows the tuned J_s
            point.network.J_s = value;
            target_J_r(point.network) = value;
        }
        const auto report = validate(point.network);
        if (!report.valid())
            throw std::invalid_argument("invalid sweep point: " + report.violations.front());
        points.push_back(std::move(point));
    }

    std::vector<std::pair<double, double>> results(points.size());
    std::vector<std::string> errors(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) {
            try {
                results[i] = peak_and_time(run_engine(points[i], grid));
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const int pool = std::max(1, threads);
    std::vector<std::thread> workers;
    for (int i = 0; i < pool; ++i) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
    for (const auto& err : errors)
        if (!err.empty()) throw std::runtime_error("sweep point failed: " + err);

    std::string csv = "value,peak,t_peak\n";
    char row[96];
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::snprintf(row, sizeof(row), "%.12g,%.12g,%.12g\n", config.sweep_values[i],
                      results[i].first, results[i].second);
        csv += row;
    }
    const std::string out = config.output.empty() ? "sweep.csv" : config.output;
    write_text(out, csv);
    std::printf("%zu sweep points written to %s\n", points.size(), out.c_str());
    return 0;
}

void add_network_flags(CLI::App* cmd, RunConfig& config, std::optional<int>& nw,
                       std::optional<int>& contact, std::optional<double>& js,
                       std::optional<double>& jr, std::optional<double>& j0,
                       std::optional<int>& sender_contact, std::optional<std::string>& mode) {
    cmd->add_option("--nw", nw, "wire length n_w");
    cmd->add_option("--contact", contact, "target receiver contact point (default: n_w)");
    cmd->add_option("--js", js, "sender intra-block coupling J_s (default 1)");
    cmd->add_option("--jr", jr, "target receiver coupling J_r (default: J_s)");
    cmd->add_option("--j0", j0, "weak block-to-wire coupling J0 (default 0.01)");
    cmd->add_option("--sender-contact", sender_contact, "wire site the sender attaches to");
    cmd->add_option("--mode", mode, "coupling mode: switchable | permanent");
}

void apply_network_flags(RunConfig& config, const std::optional<int>& nw,
                         const std::optional<int>& contact, const std::optional<double>& js,
                         const std::optional<double>& jr, const std::optional<double>& j0,
                         const std::optional<int>& sender_contact,
                         const std::optional<std::string>& mode, bool had_config) {
    if (!had_config) {
        if (!nw) throw std::invalid_argument("--nw (or --config) is required");
        config.network.receivers = {{contact.value_or(*nw), jr.value_or(js.value_or(1.0)), true}};
    }
    if (nw) config.network.n_w = *nw;
    if (js) config.network.J_s = *js;
    if (j0) config.network.J0 = *j0;
    if (sender_contact) config.network.sender_contact = *sender_contact;
    if (mode) {
        if (*mode == "switchable")
            config.network.mode = CouplingMode::Switchable;
        else if (*mode == "permanent")
            config.network.mode = CouplingMode::Permanent;
        else
            throw std::invalid_argument("unknown mode: " + *mode);
    }
    if (had_config && contact) target_contact(config.network) = *contact;
    if (had_config && jr) target_J_r(config.network) = *jr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-excitation routing planner and simulator"};
    app.require_subcommand(1);

    // plan
    auto* plan = app.add_subcommand("plan", "emit the routing table for a wire");
    int plan_nw = 0, plan_s = 1;
    std::string plan_out, plan_json;
    plan->add_option("--nw", plan_nw, "wire length n_w")->required();
    plan->add_option("--s", plan_s, "sender contact point (default 1)");
    plan->add_option("--out", plan_out, "write the text table to this path");
    plan->add_option("--json", plan_json, "write the JSON table to this path");

    // shared simulate/sweep state
    RunConfig config;
    std::string config_path;
    std::optional<int> nw, contact, sender_contact;
    std::optional<double> js, jr, j0;
    std::optional<std::string> mode;
    std::optional<std::string> engine, output;
    std::optional<double> t_max, tol;
    std::optional<int> samples;

    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "RunConfig JSON file; flags override fields");
        add_network_flags(cmd, config, nw, contact, js, jr, j0, sender_contact, mode);
        cmd->add_option("--engine", engine, "fermion | spin (default fermion)");
        cmd->add_option("--t-max", t_max, "time horizon (default 50/J0)");
        cmd->add_option("--samples", samples, "grid samples (default 2001)");
        cmd->add_option("--tol", tol, "spin propagation tolerance (default 1e-8)");
        cmd->add_option("--out", output, "output CSV path");
    };

    auto* simulate = app.add_subcommand("simulate", "run one fidelity simulation");
    add_run_flags(simulate);

    auto* sweep = app.add_subcommand("sweep", "sweep a parameter, one CSV row per value");
    add_run_flags(sweep);
    std::string sweep_param;
    std::vector<double> sweep_values;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    sweep->add_option("--param", sweep_param, "swept parameter: contact | J_s");
    sweep->add_option("--values", sweep_values, "swept values")->delimiter(',');
    sweep->add_option("--threads", threads, "worker pool size");

    auto* verify = app.add_subcommand("verify", "run the cross-module invariant suites");
    std::string level = "fast";
    verify->add_option("--level", level, "fast | full")
        ->check(CLI::IsMember({"fast", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*plan) return cmd_plan(plan_nw, plan_s, plan_out, plan_json);
        if (*verify) return cli::run_verify(level) ? 0 : 1;

        const bool had_config = !config_path.empty();
        if (had_config) config = load_config(config_path);
        apply_network_flags(config, nw, contact, js, jr, j0, sender_contact, mode, had_config);
        if (engine) config.engine = *engine;
        if (t_max) config.t_max = *t_max;
        if (samples) config.samples = *samples;
        if (tol) config.tol = *tol;
        if (output) config.output = *output;
        if (t_max && *t_max <= 0.0) throw std::invalid_argument("t_max must be positive");
        if (!sweep_param.empty()) config.sweep_param = sweep_param;
        if (!sweep_values.empty()) config.sweep_values = sweep_values;

        if (*simulate) return cmd_simulate(config);
        if (*sweep) return cmd_sweep(config, threads);
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitEngine;
    }
    return 0;
}
