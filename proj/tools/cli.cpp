// SPDX-License-Identifier: Apache-2.0
//
// xlmimo - link-level simulator for XL-MIMO antenna selection
// Copyright (C) 2026 The xlmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "xlmimo/config.hpp"
#include "xlmimo/cost_model.hpp"
#include "xlmimo/engine.hpp"
#include "xlmimo/errors.hpp"
#include "xlmimo/report.hpp"

namespace xlmimo::cli {
namespace {

struct CommonOptions
{
    std::string config_path;
    std::vector<std::string> assignments;
    unsigned threads = 0;
    bool quiet = false;
};

struct SweepOptions
{
    int k = 0;
    int n_min = 1;
    int n_max = 0; // 0: M
    int n = 1;
    std::string scheme = "both";
    std::string k_list;
    bool no_as = false;
    bool coarse = false;
    int realizations = 0;
    long long seed = -1;
    std::string out = "-";
    std::string curves;
    bool csv = false;
    long long index = 0;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

SystemConfig load(const CommonOptions &common, const SweepOptions &opt)
{
    Overrides overrides;
    for (const auto &a : common.assignments)
        overrides.push_back(parse_assignment(a));
    if (opt.k > 0)
        overrides.emplace_back("K", std::to_string(opt.k));
    if (opt.realizations > 0)
        overrides.emplace_back("realizations", std::to_string(opt.realizations));
    if (opt.seed >= 0)
        overrides.emplace_back("seed", std::to_string(opt.seed));
    return common.config_path.empty() ? load_config("", overrides)
                                      : load_config_file(common.config_path, overrides);
}

std::vector<Scheme> schemes_of(const std::string &text)
{
    if (text == "both")
        return {Scheme::mr, Scheme::zf};
    return {parse_scheme(text)};
}

std::vector<int> parse_k_list(const std::string &text)
{
    std::vector<int> values;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ','))
    {
        token.erase(0, token.find_first_not_of(" \t"));
        token.erase(token.find_last_not_of(" \t") + 1);
        if (token.empty())
            continue;
        int v = 0;
        const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
        if (res.ec != std::errc{} || res.ptr != token.data() + token.size() || v < 1)
            throw ConfigError("k-list", "invalid user count '" + token + "'");
        values.push_back(v);
    }
    if (values.empty())
        throw ConfigError("k-list", "no user counts given");
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

EngineOptions engine_options(const CommonOptions &common, std::ostream &err)
{
    EngineOptions options;
    options.threads = common.threads;
    if (!common.quiet)
        options.progress = [&err](std::string_view msg) { err << msg << '\n'; };
    return options;
}

void emit(const std::string &path, const std::string &text, std::ostream &out)
{
    if (path.empty() || path == "-")
    {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    file << text;
    if (!file)
        throw std::runtime_error("failed writing '" + path + "'");
}

int cmd_sweep_n(const CommonOptions &common, const SweepOptions &opt, std::ostream &out,
                std::ostream &err)
{
    const SystemConfig cfg = load(common, opt);
    const int n_max = opt.n_max > 0 ? opt.n_max : cfg.M;
    if (opt.n_min < 1 || n_max > cfg.M || opt.n_min > n_max)
        throw InfeasibleError("N range [" + std::to_string(opt.n_min) + ", " +
                              std::to_string(n_max) + "] outside [1, " + std::to_string(cfg.M) +
                              "]");

    SweepSpec spec;
    spec.variable = SweepVariable::N;
    for (int n : opt.coarse ? coarse_grid(cfg.M) : full_grid(cfg.M))
        if (n >= opt.n_min && n <= n_max)
            spec.values.push_back(n);
    spec.schemes = schemes_of(opt.scheme);
    spec.as_enabled = !opt.no_as;
    spec.realizations = cfg.realizations;
    spec.seed = cfg.seed;

    std::ostringstream csv;
    write_results_csv(csv, run_sweep(cfg, spec, engine_options(common, err)));
    emit(opt.out, csv.str(), out);
    return exit_ok;
}

int cmd_sweep_k(const CommonOptions &common, const SweepOptions &opt, std::ostream &out,
                std::ostream &err)
{
    const SystemConfig cfg = load(common, opt);
    SweepSpec spec;
    spec.variable = SweepVariable::K;
    spec.values = parse_k_list(opt.k_list);
    spec.schemes = schemes_of(opt.scheme);
    spec.as_enabled = !opt.no_as;
    spec.fixed_n = opt.n;
    spec.realizations = cfg.realizations;
    spec.seed = cfg.seed;

    std::ostringstream csv;
    write_results_csv(csv, run_sweep(cfg, spec, engine_options(common, err)));
    emit(opt.out, csv.str(), out);
    return exit_ok;
}

int cmd_optimal_n(const CommonOptions &common, const SweepOptions &opt, std::ostream &out,
                  std::ostream &err)
{
    const SystemConfig cfg = load(common, opt);
    const std::vector<int> ks = parse_k_list(opt.k_list);
    const std::vector<int> grid = opt.coarse ? coarse_grid(cfg.M) : full_grid(cfg.M);
    const EngineOptions options = engine_options(common, err);

    std::vector<OptimalN> rows;
    std::vector<AggregateResult> curves;
    for (Scheme scheme : schemes_of(opt.scheme))
        for (int k : ks)
        {
            OptimalN best = find_optimal_n(cfg, scheme, k, grid, options);
            curves.insert(curves.end(), best.curve.begin(), best.curve.end());
            best.curve.clear();
            rows.push_back(std::move(best));
        }

    std::ostringstream csv;
    write_optimal_n_csv(csv, rows);
    emit(opt.out, csv.str(), out);
    if (!opt.curves.empty())
    {
        std::ostringstream curve_csv;
        write_results_csv(curve_csv, curves);
        emit(opt.curves, curve_csv.str(), out);
    }
    return exit_ok;
}

int cmd_table3(const SweepOptions &opt, std::ostream &out)
{
    std::ostringstream text;
    write_complexity_table(text, complexity_table(), opt.csv);
    emit(opt.out, text.str(), out);
    return exit_ok;
}

int cmd_validate_config(const CommonOptions &common, const SweepOptions &opt, std::ostream &out)
{
    emit(opt.out, serialize_config(load(common, opt)), out);
    return exit_ok;
}

void write_file(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    file << text;
}

int cmd_dump_realization(const CommonOptions &common, const SweepOptions &opt)
{
    const SystemConfig cfg = load(common, opt);
    if (opt.index < 0 || opt.index >= cfg.realizations)
        throw InfeasibleError("realization index " + std::to_string(opt.index) + " outside [0, " +
                              std::to_string(cfg.realizations) + ")");
    const RealizationState state = prepare_realization(cfg, static_cast<std::uint64_t>(opt.index));
    const ChannelRealization &ch = state.channel;
    const CMatrix &H_hat = state.estimate.H_hat;
    const HrnpScores scores = hrnp_scores(H_hat);

    const std::filesystem::path dir(opt.out);
    std::filesystem::create_directories(dir);

    std::ostringstream users;
    users << "user,x,y\n";
    for (std::size_t k = 0; k < ch.layout.positions.size(); ++k)
        users << k + 1 << ',' << format_number(ch.layout.positions[k].x) << ','
              << format_number(ch.layout.positions[k].y) << '\n';
    write_file(dir / "users.csv", users.str());

    std::ostringstream antennas;
    antennas << "antenna,x\n";
    for (Eigen::Index m = 0; m < ch.layout.antenna_x.size(); ++m)
        antennas << m + 1 << ',' << format_number(ch.layout.antenna_x(m)) << '\n';
    write_file(dir / "antennas.csv", antennas.str());

    std::ostringstream regions;
    regions << "user,region,first_antenna,last_antenna\n";
    for (std::size_t k = 0; k < ch.mask.regions.size(); ++k)
        for (std::size_t i = 0; i < ch.mask.regions[k].size(); ++i)
            regions << k + 1 << ',' << i + 1 << ',' << ch.mask.regions[k][i].first() + 1 << ','
                    << ch.mask.regions[k][i].last() + 1 << '\n';
    write_file(dir / "regions.csv", regions.str());

    std::ostringstream channel;
    channel << "antenna,user,visible,distance,pathloss,h_re,h_im,h_hat_re,h_hat_im,theta,rank\n";
    std::vector<std::vector<int>> rank(H_hat.cols(), std::vector<int>(H_hat.rows()));
    for (std::size_t k = 0; k < state.ranking.size(); ++k)
        for (std::size_t pos = 0; pos < state.ranking[k].size(); ++pos)
            rank[k][state.ranking[k][pos]] = static_cast<int>(pos) + 1;
    for (Eigen::Index m = 0; m < ch.H.rows(); ++m)
        for (Eigen::Index k = 0; k < ch.H.cols(); ++k)
            channel << m + 1 << ',' << k + 1 << ',' << int(ch.mask.mask(m, k)) << ','
                    << format_number(ch.layout.distances(m, k)) << ','
                    << format_number(ch.pathloss(m, k)) << ',' << format_number(ch.H(m, k).real())
                    << ',' << format_number(ch.H(m, k).imag()) << ','
                    << format_number(H_hat(m, k).real()) << ',' << format_number(H_hat(m, k).imag())
                    << ',' << format_number(scores.theta(m, k)) << ',' << rank[k][m] << '\n';
    write_file(dir / "channel.csv", channel.str());
    return exit_ok;
}

void add_common_run_flags(CLI::App *cmd, SweepOptions &opt)
{
    cmd->add_option("--scheme", opt.scheme, "Processing scheme")
        ->check(CLI::IsMember({"mr", "zf", "both"}))
        ->capture_default_str();
    cmd->add_option("--realizations", opt.realizations, "Monte Carlo realizations")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "Random seed")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", opt.out, "Output CSV path ('-' for stdout)")->capture_default_str();
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Link-level simulator for XL-MIMO antenna selection", "xlmimo"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOptions common;
    SweepOptions opt;
    app.add_option("--config", common.config_path, "Configuration file (key = value)")
        ->check(CLI::ExistingFile);
    app.add_option("--set", common.assignments, "Override a configuration key (key=value)")
        ->allow_extra_args(false);
    app.add_option("--threads", common.threads, "Worker threads (0: automatic)");
    app.add_flag("--quiet", common.quiet, "Suppress progress output");

    auto *sweep_n = app.add_subcommand("sweep-n", "Sweep the number of selected antennas N");
    sweep_n->add_option("--k", opt.k, "Number of users")->check(CLI::PositiveNumber);
    sweep_n->add_option("--n-min", opt.n_min, "Smallest N")->capture_default_str();
    sweep_n->add_option("--n-max", opt.n_max, "Largest N (default M)");
    sweep_n->add_flag("--no-as", opt.no_as, "Process with the full array");
    sweep_n->add_flag("--coarse", opt.coarse, "Use {1..10} and steps of 4 from 12");
    add_common_run_flags(sweep_n, opt);

    auto *sweep_k = app.add_subcommand("sweep-k", "Sweep the number of users K at fixed N");
    sweep_k->add_option("--k-list", opt.k_list, "Comma-separated user counts")->required();
    sweep_k->add_option("--n", opt.n, "Selected antennas per user")->capture_default_str();
    sweep_k->add_flag("--no-as", opt.no_as, "Process with the full array");
    add_common_run_flags(sweep_k, opt);

    auto *optimal = app.add_subcommand("optimal-n", "EE-maximising N for each K");
    optimal->add_option("--k-list", opt.k_list, "Comma-separated user counts")->required();
    optimal->add_flag("--coarse", opt.coarse, "Use {1..10} and steps of 4 from 12");
    optimal->add_option("--curves", opt.curves, "Also write the EE curves as sweep CSV");
    add_common_run_flags(optimal, opt);

    auto *table3 = app.add_subcommand("table3", "Print the complexity table in Gflop/s");
    table3->add_flag("--csv", opt.csv, "Emit CSV instead of an aligned table");
    table3->add_option("--out", opt.out, "Output path ('-' for stdout)");

    auto *validate = app.add_subcommand("validate-config", "Check and print the configuration");
    validate->add_option("--out", opt.out, "Output path ('-' for stdout)");

    auto *dump = app.add_subcommand("dump-realization", "Write one realization as CSV files");
    dump->add_option("--index", opt.index, "Realization index")->capture_default_str();
    dump->add_option("--seed", opt.seed, "Random seed")->check(CLI::NonNegativeNumber);
    dump->add_option("--k", opt.k, "Number of users")->check(CLI::PositiveNumber);
    dump->add_option("--out", opt.out, "Output directory")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (*sweep_n)
            return cmd_sweep_n(common, opt, out, err);
        if (*sweep_k)
            return cmd_sweep_k(common, opt, out, err);
        if (*optimal)
            return cmd_optimal_n(common, opt, out, err);
        if (*table3)
            return cmd_table3(opt, out);
        if (*validate)
            return cmd_validate_config(common, opt, out);
        if (*dump)
            return cmd_dump_realization(common, opt);
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const InfeasibleError &e)
    {
        err << "infeasible: " << e.what() << '\n';
        return exit_infeasible;
    }
    catch (const std::invalid_argument &e)
    {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_usage;
}

} // namespace xlmimo::cli
