// Benchmark CLI around the coolsim library: reproduces the comparison sweeps
// (fig2, fig3), the finite-N overhead scaling fit, and free-form sweeps, all
// emitted as deterministic CSV. Exit codes: 0 success, 2 configuration error,
// 3 numerical failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>

#include "coolsim/coolsim.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_path;
    unsigned threads = 1;
    double beta = -1.0, beta_h = -1.0, beta_star = -1.0, omega_s = -1.0, eps = -1.0;
    std::string n_list;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

/// Flat `key = value` config file; '#' starts a comment.
std::map<std::string, std::string> load_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line without '=': " + line);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

coolsim::ExperimentConfig build_config(coolsim::ExperimentId id, const CliOptions& cli) {
    coolsim::ExperimentConfig cfg;
    cfg.id = id;
    switch (id) {
        case coolsim::ExperimentId::fig2:
            cfg.eps = 1e-3;
            cfg.n_list = {25, 50, 100, 200};
            break;
        case coolsim::ExperimentId::fig3:
            cfg.eps = 0.01;
            cfg.n_list = {100, 200, 400, 800};
            break;
        case coolsim::ExperimentId::scaling:
            cfg.n_list = {1000, 10000};
            cfg.beta_star_list = {5.0, 20.0};
            break;
        case coolsim::ExperimentId::custom:
            cfg.n_list = {10, 100, 1000};
            cfg.beta_star_list = {5.0};
            break;
    }
    std::map<std::string, std::string> kv;
    if (!cli.config_path.empty()) kv = load_config(cli.config_path);
    auto getd = [&](const char* key, double& slot) {
        if (auto it = kv.find(key); it != kv.end()) slot = std::stod(it->second);
    };
    getd("beta", cfg.beta);
    getd("beta_h", cfg.beta_h);
    getd("omega_s", cfg.omega_s);
    getd("eps", cfg.eps);
    getd("unit_gap", cfg.unit_gap);
    if (auto it = kv.find("seed"); it != kv.end()) cfg.seed = std::stoull(it->second);
    if (auto it = kv.find("threads"); it != kv.end())
        cfg.threads = static_cast<unsigned>(std::stoul(it->second));
    if (auto it = kv.find("reps"); it != kv.end()) cfg.reps_m = std::stoul(it->second);
    if (auto it = kv.find("n_list"); it != kv.end()) {
        cfg.n_list.clear();
        for (const auto& tok : split(it->second, ','))
            cfg.n_list.push_back(std::stoul(trim(tok)));
    }
    if (auto it = kv.find("beta_star_list"); it != kv.end()) {
        cfg.beta_star_list.clear();
        for (const auto& tok : split(it->second, ','))
            cfg.beta_star_list.push_back(std::stod(trim(tok)));
    }
    if (auto it = kv.find("beta_star"); it != kv.end())
        cfg.beta_star_list = {std::stod(it->second)};

    // Individual flags override the config file.
    if (cli.beta >= 0.0) cfg.beta = cli.beta;
    if (cli.beta_h >= 0.0) cfg.beta_h = cli.beta_h;
    if (cli.beta_star >= 0.0) cfg.beta_star_list = {cli.beta_star};
    if (cli.omega_s >= 0.0) cfg.omega_s = cli.omega_s;
    if (cli.eps >= 0.0) cfg.eps = cli.eps;
    if (cli.threads > 0) cfg.threads = cli.threads;
    if (!cli.n_list.empty()) {
        cfg.n_list.clear();
        for (const auto& tok : split(cli.n_list, ','))
            cfg.n_list.push_back(std::stoul(trim(tok)));
    }
    return cfg;
}

int run_experiment(coolsim::ExperimentId id, const CliOptions& cli) {
    const coolsim::ExperimentConfig cfg = build_config(id, cli);
    std::vector<coolsim::ResultRow> rows;
    switch (id) {
        case coolsim::ExperimentId::fig2: {
            auto res = coolsim::run_fig2(cfg);
            rows = std::move(res.rows);
            for (const auto& f : res.failures) std::cerr << "warning: " << f << '\n';
            break;
        }
        case coolsim::ExperimentId::fig3: {
            auto res = coolsim::run_fig3(cfg);
            rows = std::move(res.rows);
            std::cerr << "fig3 multipliers: single-use " << res.multiplier_single
                      << ", m=" << cfg.reps_m << " reps " << res.multiplier_reps << '\n';
            break;
        }
        case coolsim::ExperimentId::scaling:
            rows = coolsim::run_scaling(cfg).rows;
            break;
        case coolsim::ExperimentId::custom:
            rows = coolsim::run_custom(cfg);
            break;
    }
    if (cli.out_path.empty()) {
        std::cout << coolsim::format_rows(rows);
    } else {
        coolsim::emit_csv(rows, cli.out_path);
        std::cerr << rows.size() << " rows -> " << cli.out_path << '\n';
    }
    return 0;
}

int run_selftest(const CliOptions& cli) {
    std::vector<coolsim::ResultRow> rows;
    {
        coolsim::ExperimentConfig c;
        c.eps = 0.01;
        c.n_list = {10, 20};
        c.threads = cli.threads;
        auto r = coolsim::run_fig2(c);
        rows.insert(rows.end(), r.rows.begin(), r.rows.end());
    }
    {
        coolsim::ExperimentConfig c;
        c.id = coolsim::ExperimentId::fig3;
        c.eps = 0.01;
        c.n_list = {50, 100};
        c.threads = cli.threads;
        auto r = coolsim::run_fig3(c);
        rows.insert(rows.end(), r.rows.begin(), r.rows.end());
    }
    {
        coolsim::ExperimentConfig c;
        c.id = coolsim::ExperimentId::scaling;
        c.n_list = {1000};
        c.beta_star_list = {5.0};
        c.threads = cli.threads;
        auto r = coolsim::run_scaling(c);
        rows.insert(rows.end(), r.rows.begin(), r.rows.end());
    }
    {
        coolsim::ExperimentConfig c;
        c.id = coolsim::ExperimentId::custom;
        c.n_list = {10, 100};
        c.beta_star_list = {4.0};
        c.threads = cli.threads;
        auto r = coolsim::run_custom(c);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    if (cli.out_path.empty()) {
        std::cout << coolsim::format_rows(rows);
    } else {
        coolsim::emit_csv(rows, cli.out_path);
    }
    std::cerr << "selftest: " << rows.size() << " rows\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coolsim - cooling-protocol benchmarks with dissipation ledgers"};
    app.require_subcommand(1);
    app.fallthrough();

    CliOptions cli;
    app.add_option("--config", cli.config_path, "flat key = value config file");
    app.add_option("--out", cli.out_path, "output CSV path (default: stdout)");
    app.add_option("--threads", cli.threads, "worker threads for independent rows");
    app.add_option("--beta", cli.beta, "cold/ambient inverse temperature");
    app.add_option("--beta-h", cli.beta_h, "hot-bath inverse temperature");
    app.add_option("--beta-star", cli.beta_star, "target inverse temperature");
    app.add_option("--omega-s", cli.omega_s, "target energy gap");
    app.add_option("--eps", cli.eps, "target excited-state population");
    app.add_option("--n-list", cli.n_list, "comma-separated operation counts");

    auto* fig2 = app.add_subcommand("fig2", "linear qubit sequence vs degeneracy-doubling machine");
    auto* fig3 = app.add_subcommand("fig3", "coherent vs heat-engine operation counts");
    auto* scaling = app.add_subcommand("scaling", "finite-N overhead scaling fit");
    auto* custom = app.add_subcommand("custom", "free-form linear-sequence sweep");
    auto* selftest = app.add_subcommand("selftest", "deterministic smoke run of all experiments");

    CLI11_PARSE(app, argc, argv);

    try {
        if (selftest->parsed()) return run_selftest(cli);
        if (fig2->parsed()) return run_experiment(coolsim::ExperimentId::fig2, cli);
        if (fig3->parsed()) return run_experiment(coolsim::ExperimentId::fig3, cli);
        if (scaling->parsed()) return run_experiment(coolsim::ExperimentId::scaling, cli);
        if (custom->parsed()) return run_experiment(coolsim::ExperimentId::custom, cli);
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
