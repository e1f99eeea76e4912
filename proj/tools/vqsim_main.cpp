#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vqsim/ansatz.hpp"
#include "vqsim/bench.hpp"
#include "vqsim/errors.hpp"
#include "vqsim/hamiltonian.hpp"
#include "vqsim/scaling.hpp"
#include "vqsim/vqs.hpp"

namespace {

// Exit codes: 0 success, 2 usage/config error, 3 data error.
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

int fail_usage(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return kExitUsage;
}

int fail_data(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return kExitData;
}

std::string provenance_path_for(const std::string& out_path) {
    const std::string suffix = ".csv";
    if (out_path.size() > suffix.size() &&
        out_path.compare(out_path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return out_path.substr(0, out_path.size() - suffix.size()) + "_provenance.json";
    return out_path + "_provenance.json";
}

struct GenArgs {
    int n_qubits = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const GenArgs& args) {
    try {
        const vqsim::ProblemInstance instance = vqsim::random_instance(args.n_qubits, args.seed);
        vqsim::write_text_file(args.out, vqsim::instance_to_json(instance));
        return 0;
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
}

struct RunArgs {
    std::string config_path;
    std::string out = "results.csv";
    int jobs = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::vector<int> n_qubits;
    std::vector<double> t_finals;
    std::vector<std::string> methods;
    double threshold = 0.0;
    bool threshold_given = false;
    int max_layers = 0;
    int max_steps = 0;
    std::string dump_dir;
};

void dump_trajectories(const std::vector<vqsim::RunResult>& results,
                       const vqsim::SweepConfig& config, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw vqsim::IoError("cannot create directory: " + dir + " (" + ec.message() + ")");
    for (const vqsim::RunResult& r : results) {
        if (r.method != vqsim::Method::Vqs || !r.solved)
            continue;
        const vqsim::ProblemInstance instance = vqsim::random_instance(r.n_qubits, r.instance_seed);
        vqsim::VqsTrajectory trajectory;
        try {
            trajectory = vqsim::integrate(vqsim::HvaAnsatz(instance, r.structural_count),
                                          config.vqs_config, r.t_final);
        } catch (const vqsim::StiffnessError&) {
            std::cerr << "warning: trajectory replay stalled for seed " << r.instance_seed
                      << "; skipping dump\n";
            continue;
        }
        nlohmann::ordered_json j;
        j["n_qubits"] = r.n_qubits;
        j["t_final"] = r.t_final;
        j["instance_seed"] = r.instance_seed;
        j["n_layers"] = r.structural_count;
        j["times"] = trajectory.times;
        auto& params = j["params"] = nlohmann::ordered_json::array();
        for (const vqsim::RealVector& theta : trajectory.params)
            params.push_back(std::vector<double>(theta.begin(), theta.end()));
        j["mclachlan"] = trajectory.mclachlan_distance;
        char name[128];
        std::snprintf(name, sizeof name, "trajectory_vqs_nq%d_tf%.12g_seed%llu.json", r.n_qubits,
                      r.t_final, static_cast<unsigned long long>(r.instance_seed));
        vqsim::write_text_file((std::filesystem::path(dir) / name).string(), j.dump(2) + "\n");
    }
}

int run_run(const RunArgs& args) {
    vqsim::SweepConfig config;
    try {
        if (!args.config_path.empty())
            config = vqsim::sweep_config_from_json(vqsim::read_text_file(args.config_path));
        if (!args.n_qubits.empty())
            config.n_qubits_range = args.n_qubits;
        if (!args.t_finals.empty())
            config.t_final_values = args.t_finals;
        if (!args.methods.empty()) {
            config.methods.clear();
            for (const std::string& name : args.methods)
                config.methods.push_back(name == "vqs" ? vqsim::Method::Vqs
                                                       : vqsim::Method::Trotter);
        }
        if (args.seed_given)
            config.base_seed = args.seed;
        if (args.threshold_given)
            config.fidelity_threshold = args.threshold;
        if (args.max_layers > 0)
            config.max_layers = args.max_layers;
        if (args.max_steps > 0)
            config.max_trotter_steps = args.max_steps;
        if (config.n_qubits_range.empty() || config.t_final_values.empty())
            return fail_usage("provide --config, or both --nq and --tf");
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }

    try {
        const std::vector<vqsim::RunResult> results = vqsim::run_sweep(config, args.jobs);
        vqsim::write_text_file(args.out, vqsim::results_to_csv(results));
        vqsim::write_text_file(provenance_path_for(args.out), vqsim::provenance_json(config));
        if (!args.dump_dir.empty())
            dump_trajectories(results, config, args.dump_dir);
        std::size_t unsolved = 0;
        for (const vqsim::RunResult& r : results)
            unsolved += r.solved ? 0 : 1;
        std::cerr << "wrote " << results.size() << " rows (" << unsolved << " unsolved) to "
                  << args.out << "\n";
        return 0;
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
}

struct FitArgs {
    std::string results;
    std::string method;
    std::string out;
};

int run_fit(const FitArgs& args) {
    std::vector<vqsim::RunResult> rows;
    try {
        rows = vqsim::results_from_csv(vqsim::read_text_file(args.results));
    } catch (const std::exception& e) {
        return fail_data(e.what());
    }
    try {
        const vqsim::Method method =
            args.method == "vqs" ? vqsim::Method::Vqs : vqsim::Method::Trotter;
        const vqsim::FitParams fit = vqsim::fit_power_law(rows, method);
        vqsim::write_text_file(args.out, vqsim::fit_to_json(fit));
        if (fit.excluded_unsolved > 0 || fit.excluded_small_t > 0)
            std::cerr << "excluded " << fit.excluded_unsolved << " unsolved rows and "
                      << fit.excluded_small_t << " rows outside the log-domain (t_final < 1)\n";
        std::cerr << "fit " << args.method << ": a=" << fit.a << " b=" << fit.b << " c=" << fit.c
                  << " over " << fit.n_rows << " rows\n";
        return 0;
    } catch (const vqsim::InsufficientDataError& e) {
        return fail_data(e.what());
    } catch (const vqsim::IoError& e) {
        return fail_usage(e.what());
    } catch (const std::exception& e) {
        return fail_data(e.what());
    }
}

struct BoundaryArgs {
    std::string fit_vqs;
    std::string fit_trotter;
    std::string out;
    std::vector<int> grid;
};

int run_boundary(const BoundaryArgs& args) {
    vqsim::FitParams fit_vqs, fit_trotter;
    try {
        fit_vqs = vqsim::fit_from_json(vqsim::read_text_file(args.fit_vqs));
        fit_trotter = vqsim::fit_from_json(vqsim::read_text_file(args.fit_trotter));
    } catch (const std::exception& e) {
        return fail_data(e.what());
    }
    try {
        std::vector<int> grid = args.grid;
        if (grid.empty())
            for (int n = 2; n <= 10; ++n)
                grid.push_back(n);
        const vqsim::AdvantageBoundary boundary =
            vqsim::advantage_boundary(fit_vqs, fit_trotter, grid);
        vqsim::write_text_file(args.out, vqsim::boundary_to_csv(boundary));
        if (boundary.uniform_domination)
            std::cerr << "no boundary: " << vqsim::method_name(boundary.uniform_winner)
                      << " dominates the whole grid\n";
        else
            std::cerr << "t_f*(n_q) = " << boundary.kappa << " * n_q^" << boundary.gamma
                      << "; VQS advantage on the "
                      << (boundary.vqs_side == vqsim::AdvantageSide::LargeTf ? "large" : "small")
                      << "-t_f side\n";
        return 0;
    } catch (const vqsim::DegenerateBoundaryError& e) {
        return fail_data(e.what());
    } catch (const vqsim::IoError& e) {
        return fail_usage(e.what());
    } catch (const std::exception& e) {
        return fail_data(e.what());
    }
}

struct ThresholdArgs {
    std::string fit_vqs;
    std::string fit_trotter;
    std::string out;
    double p_single = -1.0;
    double p_min = 1e-6;
    double p_max = 1e6;
    int p_points = 50;
    int nq_min = 2;
    int nq_max = 40;
};

int run_threshold(const ThresholdArgs& args) {
    vqsim::FitParams fit_vqs, fit_trotter;
    try {
        fit_vqs = vqsim::fit_from_json(vqsim::read_text_file(args.fit_vqs));
        fit_trotter = vqsim::fit_from_json(vqsim::read_text_file(args.fit_trotter));
    } catch (const std::exception& e) {
        return fail_data(e.what());
    }
    try {
        std::vector<double> p_values;
        if (args.p_single >= 0) {
            p_values.push_back(args.p_single);
        } else {
            if (!(args.p_min > 0) || !(args.p_max >= args.p_min) || args.p_points < 1)
                return fail_usage("invalid p grid: need 0 < p-min <= p-max and p-points >= 1");
            for (int i = 0; i < args.p_points; ++i) {
                const double fraction =
                    args.p_points == 1 ? 0.0
                                       : static_cast<double>(i) / (args.p_points - 1);
                p_values.push_back(args.p_min *
                                   std::pow(args.p_max / args.p_min, fraction));
            }
        }
        vqsim::ThresholdCurve curve;
        for (double p : p_values)
            curve.emplace_back(
                p, vqsim::classical_cost_threshold(fit_vqs, fit_trotter, p, args.nq_min,
                                                   args.nq_max));
        vqsim::write_text_file(args.out, vqsim::thresholds_to_csv(curve));
        return 0;
    } catch (const vqsim::IoError& e) {
        return fail_usage(e.what());
    } catch (const std::exception& e) {
        return fail_data(e.what());
    }
}

struct PlotDataArgs {
    std::string results;
    std::string boundary;
    std::string thresholds;
    std::string out_dir;
};

int run_plot_data(const PlotDataArgs& args) {
    try {
        const std::vector<vqsim::RunResult> rows =
            vqsim::results_from_csv(vqsim::read_text_file(args.results));
        std::vector<vqsim::BoundaryPoint> boundary;
        if (!args.boundary.empty())
            boundary = vqsim::boundary_points_from_csv(vqsim::read_text_file(args.boundary));
        vqsim::ThresholdCurve thresholds;
        if (!args.thresholds.empty())
            thresholds = vqsim::thresholds_from_csv(vqsim::read_text_file(args.thresholds));
        const vqsim::PlotFiles files =
            vqsim::emit_plot_data(rows, boundary, thresholds, args.out_dir);
        std::cerr << "wrote " << files.depth_vs_nqubits << ", " << files.depth_vs_tfinal << ", "
                  << files.advantage_map << ", " << files.threshold_curve << "\n";
        return 0;
    } catch (const vqsim::IoError& e) {
        return fail_usage(e.what());
    } catch (const std::exception& e) {
        return fail_data(e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statevector laboratory for variational and Trotter quantum simulation"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate a random problem instance JSON");
    gen->add_option("--nq", gen_args.n_qubits, "Number of qubits (>= 2)")->required();
    gen->add_option("--seed", gen_args.seed, "Instance seed");
    gen->add_option("--out", gen_args.out, "Output instance path")->required();

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Run a minimum-depth benchmark sweep");
    run->add_option("--config", run_args.config_path, "Sweep config JSON path");
    run->add_option("--out", run_args.out, "Results CSV path (provenance JSON written adjacent)");
    run->add_option("--jobs", run_args.jobs, "Worker thread count")->check(CLI::PositiveNumber);
    auto* seed_opt = run->add_option("--seed", run_args.seed, "Base seed override");
    run->add_option("--nq", run_args.n_qubits, "Qubit counts (comma separated)")->delimiter(',');
    run->add_option("--tf", run_args.t_finals, "Final times (comma separated)")->delimiter(',');
    run->add_option("--methods", run_args.methods, "Methods to run (vqs, trotter)")
        ->delimiter(',')
        ->check(CLI::IsMember({"vqs", "trotter"}));
    auto* threshold_opt =
        run->add_option("--threshold", run_args.threshold, "Fidelity threshold (default 0.95)");
    run->add_option("--max-layers", run_args.max_layers, "VQS layer cap override");
    run->add_option("--max-steps", run_args.max_steps, "Trotter step cap override");
    run->add_option("--dump-trajectories", run_args.dump_dir,
                    "Directory for per-success VQS trajectory JSON dumps (debugging)");

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit", "Fit the power-law depth model to sweep results");
    fit->add_option("--results", fit_args.results, "Results CSV path")->required();
    fit->add_option("--method", fit_args.method, "Method to fit")
        ->required()
        ->check(CLI::IsMember({"vqs", "trotter"}));
    fit->add_option("--out", fit_args.out, "Output fit JSON path")->required();

    BoundaryArgs boundary_args;
    CLI::App* boundary = app.add_subcommand("boundary", "Compute the equal-depth boundary curve");
    boundary->add_option("--fit-vqs", boundary_args.fit_vqs, "VQS fit JSON path")->required();
    boundary->add_option("--fit-trotter", boundary_args.fit_trotter, "Trotter fit JSON path")
        ->required();
    boundary->add_option("--out", boundary_args.out, "Output boundary CSV path")->required();
    boundary->add_option("--nq", boundary_args.grid, "Qubit grid (default 2..10)")
        ->delimiter(',');

    ThresholdArgs threshold_args;
    CLI::App* threshold =
        app.add_subcommand("threshold", "Classical-cost threshold over a prefactor grid");
    threshold->add_option("--fit-vqs", threshold_args.fit_vqs, "VQS fit JSON path")->required();
    threshold->add_option("--fit-trotter", threshold_args.fit_trotter, "Trotter fit JSON path")
        ->required();
    threshold->add_option("--out", threshold_args.out, "Output threshold CSV path")->required();
    threshold->add_option("--p", threshold_args.p_single,
                          "Single prefactor value (overrides the grid)");
    threshold->add_option("--p-min", threshold_args.p_min, "Grid start (default 1e-6)");
    threshold->add_option("--p-max", threshold_args.p_max, "Grid end (default 1e6)");
    threshold->add_option("--p-points", threshold_args.p_points,
                          "Logarithmic grid size (default 50)");
    threshold->add_option("--nq-min", threshold_args.nq_min, "Search range start (default 2)");
    threshold->add_option("--nq-max", threshold_args.nq_max, "Search range end (default 40)");

    PlotDataArgs plot_args;
    CLI::App* plot = app.add_subcommand("plot-data", "Emit plot-ready CSV files");
    plot->add_option("--results", plot_args.results, "Results CSV path")->required();
    plot->add_option("--boundary", plot_args.boundary, "Boundary CSV path (optional)");
    plot->add_option("--thresholds", plot_args.thresholds, "Threshold CSV path (optional)");
    plot->add_option("--out", plot_args.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    run_args.seed_given = seed_opt->count() > 0;
    run_args.threshold_given = threshold_opt->count() > 0;

    if (app.got_subcommand(gen))
        return run_gen(gen_args);
    if (app.got_subcommand(run))
        return run_run(run_args);
    if (app.got_subcommand(fit))
        return run_fit(fit_args);
    if (app.got_subcommand(boundary))
        return run_boundary(boundary_args);
    if (app.got_subcommand(threshold))
        return run_threshold(threshold_args);
    return run_plot_data(plot_args);
}
