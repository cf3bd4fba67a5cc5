#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "thermoecon/calibration.hpp"
#include "thermoecon/core_model.hpp"
#include "thermoecon/dynamics.hpp"
#include "thermoecon/scenario.hpp"
#include "thermoecon/table_io.hpp"

namespace te = thermoecon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitBlowup = 4;

// ============================================================
// Output plumbing
// ============================================================

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw te::ConfigError("cannot open output file: " + path);
    out << text;
}

void emit_table(const te::Table& table, const std::string& format,
                const std::string& out_path) {
    std::ostringstream buf;
    if (format == "json") te::write_json(buf, table);
    else te::write_csv(buf, table);
    if (out_path.empty()) std::cout << buf.str();
    else write_text(out_path, buf.str());
}

std::string manifest_path(const std::string& out_path) {
    std::filesystem::path p(out_path);
    p.replace_extension();
    return p.string() + ".manifest.ini";
}

int resolve_threads(bool flag_given, int flag_value) {
    if (flag_given) {
        if (flag_value < 0) throw te::ConfigError("--threads: must be >= 0");
        return flag_value;
    }
    if (const char* env = std::getenv("THERMOECON_THREADS")) {
        const long long v = te::parse_integer(env, "THERMOECON_THREADS");
        if (v < 0) throw te::ConfigError("THERMOECON_THREADS: must be >= 0");
        return static_cast<int>(v);
    }
    return 0;
}

// ============================================================
// classify
// ============================================================

struct ClassifyArgs {
    std::string eta0, eta_tech, eta_delta, eta_R_net, eta_e;
    std::string format = "csv";
    std::string out;
};

int run_classify(const ClassifyArgs& args) {
    const double eta0 = te::parse_rate(args.eta0, "--eta0");
    const bool has_tech = !args.eta_tech.empty();
    const bool has_comp =
        !args.eta_delta.empty() || !args.eta_R_net.empty() || !args.eta_e.empty();
    if (has_tech && has_comp)
        throw te::ConfigError("--eta-tech conflicts with the component flags");
    double eta_tech = 0.0;
    if (has_comp) {
        te::TechChange tc;
        if (!args.eta_delta.empty()) tc.eta_delta = te::parse_rate(args.eta_delta, "--eta-delta");
        if (!args.eta_R_net.empty()) tc.eta_R_net = te::parse_rate(args.eta_R_net, "--eta-r-net");
        if (!args.eta_e.empty()) tc.eta_e = te::parse_rate(args.eta_e, "--eta-e");
        eta_tech = tc.total();
    } else if (has_tech) {
        eta_tech = te::parse_rate(args.eta_tech, "--eta-tech");
    }

    const te::GrowthMode mode = te::classify_mode(eta_tech, eta0);
    std::optional<double> G;
    if (eta0 != 0.0) G = te::growth_number(eta_tech, eta0);

    std::ostringstream buf;
    if (args.format == "json") {
        nlohmann::json j;
        j["regime"] = te::regime_name(mode.regime);
        j["G"] = G ? nlohmann::json(*G) : nlohmann::json(nullptr);
        j["limiting_rate"] = std::isfinite(mode.limiting_rate)
                                 ? nlohmann::json(mode.limiting_rate)
                                 : nlohmann::json(te::format_cell(mode.limiting_rate));
        j["blowup_time"] =
            mode.blowup_time ? nlohmann::json(*mode.blowup_time) : nlohmann::json(nullptr);
        j["constant_trajectory"] = mode.constant_trajectory;
        buf << j.dump(2) << '\n';
    } else {
        buf << "regime,G,limiting_rate,blowup_time,constant_trajectory\n";
        buf << te::regime_name(mode.regime) << ',';
        if (G) buf << te::format_cell(*G);
        buf << ',' << te::format_cell(mode.limiting_rate) << ',';
        if (mode.blowup_time) buf << te::format_cell(*mode.blowup_time);
        buf << ',' << (mode.constant_trajectory ? 1 : 0) << '\n';
    }
    if (args.out.empty()) std::cout << buf.str();
    else write_text(args.out, buf.str());
    return kExitOk;
}

// ============================================================
// simulate / ensemble / physical / calibrate
// ============================================================

struct RunArgs {
    std::string config;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads_flag = 0;
    bool threads_given = false;
};

int run_simulate(const RunArgs& args) {
    te::Scenario sc = te::load_scenario(args.config);
    if (!sc.has_fiscal_rates)
        throw te::ConfigError("config: [scenario] eta0 is required for simulate");
    const int threads = resolve_threads(args.threads_given, args.threads_flag);

    te::Trajectory traj = te::integrate_fiscal(sc.params);
    traj.scenario_id = sc.id;
    const std::vector<double> windex = te::wealth_index(traj);

    te::Table table;
    table.columns = {"t", "eta", "C", "Y", "a", "innovation", "gdp_growth", "wealth_index"};
    table.rows.reserve(traj.points.size());
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
        const auto& pt = traj.points[i];
        table.rows.push_back(
            {pt.t, pt.eta, pt.C, pt.Y, pt.a, pt.innovation, pt.gdp_growth, windex[i]});
    }
    emit_table(table, args.format, args.out);

    if (!args.out.empty()) {
        write_text(manifest_path(args.out),
                   te::manifest_text(sc, {"simulate", args.format, threads}, std::nullopt));
        std::cout << "points=" << traj.points.size()
                  << " regime=" << te::regime_name(traj.terminal_mode.regime);
        if (traj.blowup_time)
            std::cout << " blowup_time=" << te::format_cell(*traj.blowup_time);
        std::cout << '\n';
    }
    if (traj.blowup_time) {
        std::cerr << "simulate: trajectory diverged at t = "
                  << te::format_cell(*traj.blowup_time) << "; partial output written\n";
        return kExitBlowup;
    }
    return kExitOk;
}

int run_ensemble_cmd(const RunArgs& args) {
    te::Scenario sc = te::load_scenario(args.config);
    if (!sc.has_fiscal_rates)
        throw te::ConfigError("config: [scenario] eta0 is required for ensemble");
    if (!sc.ensemble)
        throw te::ConfigError("config: ensemble runs need an [ensemble] section");
    if (args.seed_given) sc.ensemble->noise.seed = args.seed;
    const int threads = resolve_threads(args.threads_given, args.threads_flag);

    const te::EnsembleResult res =
        te::run_ensemble(sc.params, sc.ensemble->noise, sc.ensemble->members, threads);

    const double C0 = sc.params.C0;
    auto windex = [C0](double c) { return 100.0 * c / C0; };
    te::Table table;
    table.columns = {"t",
                     "eta_q5", "eta_q25", "eta_q50", "eta_q75", "eta_q95", "eta_det",
                     "windex_q5", "windex_q25", "windex_q50", "windex_q75", "windex_q95",
                     "windex_det"};
    table.rows.reserve(res.t.size());
    for (std::size_t i = 0; i < res.t.size(); ++i) {
        table.rows.push_back({res.t[i],
                              res.eta.q5[i], res.eta.q25[i], res.eta.q50[i],
                              res.eta.q75[i], res.eta.q95[i], res.eta_deterministic[i],
                              windex(res.wealth.q5[i]), windex(res.wealth.q25[i]),
                              windex(res.wealth.q50[i]), windex(res.wealth.q75[i]),
                              windex(res.wealth.q95[i]),
                              windex(res.wealth_deterministic[i])});
    }
    emit_table(table, args.format, args.out);

    if (!args.out.empty()) {
        te::EnsembleOutcome outcome{res.collapse_fraction, res.member_count, res.seed};
        write_text(manifest_path(args.out),
                   te::manifest_text(sc, {"ensemble", args.format, threads}, outcome));
        std::cout << "members=" << res.member_count
                  << " collapse_fraction=" << te::format_cell(res.collapse_fraction)
                  << " seed=" << res.seed << '\n';
    }
    return kExitOk;
}

int run_physical(const RunArgs& args) {
    te::Scenario sc = te::load_scenario(args.config);
    if (!sc.physical)
        throw te::ConfigError("config: physical runs need a [physical] section");
    const int threads = resolve_threads(args.threads_given, args.threads_flag);

    const te::PhysicalTrajectory traj =
        te::integrate_physical(sc.physical->initial, sc.physical->schedules(),
                               sc.params.constants, sc.params.dt, sc.params.horizon);

    te::Table table;
    table.columns = {"t", "N_S", "delta_H_R", "e_S_tot", "delta", "D", "a",
                     "j_a", "j_d", "j_net", "eta", "eta_tech", "C", "Y", "gdp_growing"};
    table.rows.reserve(traj.points.size());
    for (const auto& pt : traj.points) {
        table.rows.push_back({pt.t, pt.state.N_S, pt.state.delta_H_R, pt.state.e_S_tot,
                              pt.state.delta, pt.state.D, pt.flows.a,
                              pt.flows.j_a, pt.flows.j_d, pt.flows.j_net,
                              pt.eta, pt.eta_tech, pt.C, pt.Y,
                              pt.gdp_growing ? 1.0 : 0.0});
    }
    emit_table(table, args.format, args.out);

    if (!args.out.empty()) {
        write_text(manifest_path(args.out),
                   te::manifest_text(sc, {"physical", args.format, threads}, std::nullopt));
        std::cout << "points=" << traj.points.size()
                  << " reserves_exhausted=" << (traj.reserves_exhausted ? 1 : 0);
        if (traj.reserves_exhausted)
            std::cout << " exhaustion_time=" << te::format_cell(traj.exhaustion_time);
        std::cout << " consumed=" << te::format_cell(traj.consumed_integral) << '\n';
    }
    return kExitOk;
}

struct CalibrateArgs {
    std::string data;
    double c_pre = 0.0;
    std::string out;
    std::string format = "csv";
};

int run_calibrate(const CalibrateArgs& args) {
    if (args.c_pre < 0.0) throw te::ConfigError("--c-pre: must be >= 0");
    const te::HistoricalSeries series = te::load_historical_series(args.data);
    const te::CalibrationReport rep = te::calibrate_series(series, args.c_pre);

    te::Table table;
    table.columns = {"year", "gdp", "energy", "wealth", "lambda", "eta",
                     "inflation", "beta", "gamma", "delta"};
    table.rows.reserve(rep.years.size());
    for (std::size_t i = 0; i < rep.years.size(); ++i) {
        std::vector<std::optional<double>> row;
        row.push_back(static_cast<double>(rep.years[i]));
        row.push_back(rep.gdp[i]);
        row.push_back(rep.energy[i] ? std::optional<double>(*rep.energy[i]) : std::nullopt);
        row.push_back(rep.wealth[i]);
        row.push_back(rep.lambda[i] ? std::optional<double>(*rep.lambda[i]) : std::nullopt);
        row.push_back(rep.eta[i]);
        if (rep.decay[i]) {
            row.push_back(rep.decay[i]->inflation);
            row.push_back(rep.decay[i]->beta);
            row.push_back(rep.decay[i]->gamma);
            row.push_back(rep.decay[i]->delta);
        } else {
            row.insert(row.end(), 4, std::nullopt);
        }
        table.rows.push_back(std::move(row));
    }
    emit_table(table, args.format, args.out);

    if (!args.out.empty()) {
        std::cout << "records=" << rep.years.size()
                  << " lambda_count=" << rep.lambda_count;
        if (rep.lambda_count > 0)
            std::cout << " lambda_mean=" << te::format_cell(rep.lambda_mean)
                      << " lambda_std=" << te::format_cell(rep.lambda_std);
        std::cout << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermodynamic growth model: logistic rate-of-return dynamics, "
                 "stochastic ensembles, coupled physical runs, and calibration"};
    app.require_subcommand(1);
    const auto format_check = CLI::IsMember({"csv", "json"});

    ClassifyArgs cl;
    auto* classify = app.add_subcommand(
        "classify", "Name the growth mode of an (eta0, eta_tech) pair");
    classify->add_option("--eta0", cl.eta0, "Initial rate of return, e.g. 0.005 or 0.5%")
        ->required();
    classify->add_option("--eta-tech", cl.eta_tech, "Rate of technological change");
    classify->add_option("--eta-delta", cl.eta_delta, "Longevity component of eta_tech");
    classify->add_option("--eta-r-net", cl.eta_R_net, "Net reserve component of eta_tech");
    classify->add_option("--eta-e", cl.eta_e, "Specific-enthalpy component of eta_tech");
    classify->add_option("--format", cl.format, "Output format")->check(format_check);
    classify->add_option("--out", cl.out, "Write the result here instead of stdout");

    RunArgs run;
    auto* simulate = app.add_subcommand(
        "simulate", "Integrate one deterministic fiscal trajectory");
    auto* ensemble = app.add_subcommand(
        "ensemble", "Run a stochastic ensemble and report quantile bands");
    auto* physical = app.add_subcommand(
        "physical", "Integrate the coupled physical reserve model");
    for (auto* cmd : {simulate, ensemble, physical}) {
        cmd->add_option("--config", run.config, "Scenario file")->required();
        cmd->add_option("--out", run.out, "Data file; a .manifest.ini sibling is written too");
        cmd->add_option("--seed", run.seed, "Override the configured ensemble seed");
        cmd->add_option("--threads", run.threads_flag, "Worker threads, 0 = hardware count");
        cmd->add_option("--format", run.format, "Output format")->check(format_check);
    }

    CalibrateArgs cal;
    auto* calibrate = app.add_subcommand(
        "calibrate", "Estimate lambda and the empirical rate of return from history");
    calibrate->add_option("data", cal.data, "Delimiter-separated historical series")
        ->required();
    calibrate->add_option("--c-pre", cal.c_pre,
                          "Wealth accumulated before the first record, billions");
    calibrate->add_option("--out", cal.out, "Data file for the report");
    calibrate->add_option("--format", cal.format, "Output format")->check(format_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (classify->parsed()) return run_classify(cl);
        run.seed_given = simulate->count("--seed") || ensemble->count("--seed") ||
                         physical->count("--seed");
        run.threads_given = simulate->count("--threads") || ensemble->count("--threads") ||
                            physical->count("--threads");
        if (simulate->parsed()) return run_simulate(run);
        if (ensemble->parsed()) return run_ensemble_cmd(run);
        if (physical->parsed()) return run_physical(run);
        if (calibrate->parsed()) return run_calibrate(cal);
    } catch (const te::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const te::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
