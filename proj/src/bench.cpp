#include "vqsim/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "vqsim/ansatz.hpp"
#include "vqsim/errors.hpp"
#include "vqsim/exact.hpp"
#include "vqsim/rng.hpp"
#include "vqsim/trotter.hpp"

namespace vqsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_threshold(double threshold) {
    if (!(threshold > 0.0) || !(threshold < 1.0))
        throw DomainError("fidelity threshold must lie strictly inside (0, 1)");
}

std::string format_double(double v) {
    if (std::isnan(v))
        return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::uint64_t sweep_instance_seed(std::uint64_t base_seed, int n_qubits, int index) {
    return fold_seed(fold_seed(base_seed, static_cast<std::uint64_t>(n_qubits)),
                     static_cast<std::uint64_t>(index));
}

RunResult min_depth_vqs(const ProblemInstance& instance, double t_final, double threshold,
                        const VqsConfig& config, int max_layers) {
    check_threshold(threshold);
    if (max_layers < 1)
        throw DomainError("min_depth_vqs: max_layers must be at least 1");

    RunResult result;
    result.method = Method::Vqs;
    result.n_qubits = instance.n_qubits();
    result.t_final = t_final;
    result.instance_seed = instance.seed;
    result.final_fidelity = kNaN;
    result.mclachlan_final = kNaN;

    const StateVector target = exact_evolve(instance, t_final, initial_state(instance));
    for (int layers = 1; layers <= max_layers; ++layers) {
        result.structural_count = layers;
        result.min_depth = 3 * layers;
        VqsTrajectory trajectory;
        try {
            trajectory = integrate(HvaAnsatz(instance, layers), config, t_final);
        } catch (const StiffnessError&) {
            continue; // this layer count failed; deepen and restart
        }
        const StateVector psi =
            prepare_state(HvaAnsatz(instance, layers), trajectory.params.back());
        result.final_fidelity = fidelity(target, psi);
        result.mclachlan_final = trajectory.mclachlan_distance.back();
        result.rhs_evaluations = trajectory.rhs_evaluations;
        if (result.final_fidelity >= threshold) {
            result.solved = true;
            return result;
        }
    }
    return result;
}

RunResult min_depth_trotter(const ProblemInstance& instance, double t_final, double threshold,
                            int max_steps) {
    check_threshold(threshold);
    if (max_steps < 1)
        throw DomainError("min_depth_trotter: max_steps must be at least 1");

    RunResult result;
    result.method = Method::Trotter;
    result.n_qubits = instance.n_qubits();
    result.t_final = t_final;
    result.instance_seed = instance.seed;
    result.mclachlan_final = kNaN;

    const StateVector psi0 = initial_state(instance);
    const StateVector target = exact_evolve(instance, t_final, psi0);
    for (int steps = 1; steps <= max_steps; ++steps) {
        const TrotterPlan plan(steps, t_final);
        result.structural_count = steps;
        result.min_depth = trotter_depth(plan);
        result.final_fidelity = fidelity(target, trotter_evolve(instance, plan, psi0));
        if (result.final_fidelity >= threshold) {
            result.solved = true;
            return result;
        }
    }
    return result;
}

double replay_fidelity(const ProblemInstance& instance, Method method, int structural_count,
                       double t_final, const VqsConfig& config) {
    if (structural_count < 1)
        throw DomainError("replay_fidelity: structural_count must be at least 1");

    const StateVector psi0 = initial_state(instance);
    const StateVector target = exact_evolve(instance, t_final, psi0);
    if (method == Method::Trotter)
        return fidelity(target,
                        trotter_evolve(instance, TrotterPlan(structural_count, t_final), psi0));

    const HvaAnsatz ansatz(instance, structural_count);
    try {
        const VqsTrajectory trajectory = integrate(ansatz, config, t_final);
        return fidelity(target, prepare_state(ansatz, trajectory.params.back()));
    } catch (const StiffnessError&) {
        return kNaN; // never passes a >= threshold comparison
    }
}

namespace {

struct Cell {
    Method method;
    int n_qubits;
    double t_final;
    std::uint64_t seed;
};

void validate_sweep_config(const SweepConfig& config) {
    if (config.n_qubits_range.empty())
        throw DomainError("config: field 'n_qubits_range' must be a nonempty list");
    for (std::size_t i = 0; i < config.n_qubits_range.size(); ++i)
        if (config.n_qubits_range[i] < 2 || config.n_qubits_range[i] > 12)
            throw DomainError("config: field 'n_qubits_range[" + std::to_string(i) +
                              "]' must lie in [2, 12]");
    if (config.t_final_values.empty())
        throw DomainError("config: field 't_final_values' must be a nonempty list");
    for (std::size_t i = 0; i < config.t_final_values.size(); ++i)
        if (!(config.t_final_values[i] > 0) || !std::isfinite(config.t_final_values[i]))
            throw DomainError("config: field 't_final_values[" + std::to_string(i) +
                              "]' must be positive and finite");
    if (config.n_instances < 1)
        throw DomainError("config: field 'n_instances' must be at least 1");
    if (!(config.fidelity_threshold > 0) || !(config.fidelity_threshold < 1))
        throw DomainError("config: field 'fidelity_threshold' must lie strictly inside (0, 1)");
    if (config.max_layers < 1)
        throw DomainError("config: field 'max_layers' must be at least 1");
    if (config.max_trotter_steps < 1)
        throw DomainError("config: field 'max_trotter_steps' must be at least 1");
    if (!(config.vqs_config.ode_rel_tol > 0) || !(config.vqs_config.ode_abs_tol > 0))
        throw DomainError("config: field 'vqs_config' tolerances must be strictly positive");
    if (!(config.vqs_config.max_step > 0))
        throw DomainError("config: field 'vqs_config.max_step' must be positive");
    if (config.methods.empty())
        throw DomainError("config: field 'methods' must be a nonempty list");
    if (config.methods.size() > 2 ||
        (config.methods.size() == 2 && config.methods[0] == config.methods[1]))
        throw DomainError("config: field 'methods' must not repeat a method");
}

RunResult run_cell(const Cell& cell, const SweepConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    RunResult result;
    try {
        const ProblemInstance instance = random_instance(cell.n_qubits, cell.seed);
        if (cell.method == Method::Vqs)
            result = min_depth_vqs(instance, cell.t_final, config.fidelity_threshold,
                                   config.vqs_config, config.max_layers);
        else
            result = min_depth_trotter(instance, cell.t_final, config.fidelity_threshold,
                                       config.max_trotter_steps);
    } catch (const std::exception&) {
        // A cell must never abort the sweep; record it as unsolved.
        result.method = cell.method;
        result.n_qubits = cell.n_qubits;
        result.t_final = cell.t_final;
        result.instance_seed = cell.seed;
        result.solved = false;
        result.final_fidelity = kNaN;
        result.mclachlan_final = kNaN;
        result.rhs_evaluations = -1;
    }
    if (config.record_wall_time) {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        result.wall_time_seconds = elapsed.count();
    }
    return result;
}

} // namespace

std::vector<RunResult> run_sweep(const SweepConfig& config, int jobs) {
    validate_sweep_config(config);
    if (jobs < 1)
        throw DomainError("run_sweep: jobs must be at least 1");

    std::vector<Cell> cells;
    for (Method method : {Method::Vqs, Method::Trotter}) {
        if (std::find(config.methods.begin(), config.methods.end(), method) ==
            config.methods.end())
            continue;
        for (int n_qubits : config.n_qubits_range)
            for (double t_final : config.t_final_values)
                for (int index = 0; index < config.n_instances; ++index)
                    cells.push_back({method, n_qubits, t_final,
                                     sweep_instance_seed(config.base_seed, n_qubits, index)});
    }

    std::vector<RunResult> results(cells.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size())
                return;
            results[i] = run_cell(cells[i], config);
        }
    };
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers) - 1);
    for (int w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto& thread : pool)
        thread.join();

    std::sort(results.begin(), results.end(), [](const RunResult& x, const RunResult& y) {
        return std::tuple(static_cast<int>(x.method), x.n_qubits, x.t_final, x.instance_seed) <
               std::tuple(static_cast<int>(y.method), y.n_qubits, y.t_final, y.instance_seed);
    });
    return results;
}

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
    throw DomainError("config: field '" + path + "' " + what);
}

double as_positive_real(const json& v, const std::string& path) {
    if (!v.is_number())
        config_error(path, "must be a number");
    const double d = v.get<double>();
    if (!(d > 0) || !std::isfinite(d))
        config_error(path, "must be positive and finite");
    return d;
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer())
        config_error(path, "must be an integer");
    return v.get<int>();
}

} // namespace

SweepConfig sweep_config_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("config: not valid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw DomainError("config: top level must be a JSON object");

    SweepConfig config;
    for (const auto& [key, value] : root.items()) {
        if (key == "n_qubits_range") {
            if (!value.is_array())
                config_error(key, "must be a list of integers");
            config.n_qubits_range.clear();
            for (std::size_t i = 0; i < value.size(); ++i)
                config.n_qubits_range.push_back(
                    as_int(value[i], key + "[" + std::to_string(i) + "]"));
        } else if (key == "t_final_values") {
            if (!value.is_array())
                config_error(key, "must be a list of numbers");
            config.t_final_values.clear();
            for (std::size_t i = 0; i < value.size(); ++i)
                config.t_final_values.push_back(
                    as_positive_real(value[i], key + "[" + std::to_string(i) + "]"));
        } else if (key == "n_instances") {
            config.n_instances = as_int(value, key);
        } else if (key == "fidelity_threshold") {
            if (!value.is_number())
                config_error(key, "must be a number");
            config.fidelity_threshold = value.get<double>();
        } else if (key == "max_layers") {
            config.max_layers = as_int(value, key);
        } else if (key == "max_trotter_steps") {
            config.max_trotter_steps = as_int(value, key);
        } else if (key == "base_seed") {
            if (!value.is_number_integer())
                config_error(key, "must be a nonnegative integer");
            if (!value.is_number_unsigned() && value.get<std::int64_t>() < 0)
                config_error(key, "must be a nonnegative integer");
            config.base_seed = value.get<std::uint64_t>();
        } else if (key == "vqs_config") {
            if (!value.is_object())
                config_error(key, "must be an object");
            for (const auto& [sub, subval] : value.items()) {
                const std::string path = key + "." + sub;
                if (sub == "ode_rel_tol")
                    config.vqs_config.ode_rel_tol = as_positive_real(subval, path);
                else if (sub == "ode_abs_tol")
                    config.vqs_config.ode_abs_tol = as_positive_real(subval, path);
                else if (sub == "max_step")
                    config.vqs_config.max_step = as_positive_real(subval, path);
                else
                    config_error(path, "is not a recognized field");
            }
        } else if (key == "methods") {
            if (!value.is_array())
                config_error(key, "must be a list of method names");
            config.methods.clear();
            for (std::size_t i = 0; i < value.size(); ++i) {
                const std::string path = key + "[" + std::to_string(i) + "]";
                if (!value[i].is_string())
                    config_error(path, "must be a string");
                const std::string name = value[i].get<std::string>();
                if (name == "vqs")
                    config.methods.push_back(Method::Vqs);
                else if (name == "trotter")
                    config.methods.push_back(Method::Trotter);
                else
                    config_error(path, "must be \"vqs\" or \"trotter\"");
            }
        } else if (key == "record_wall_time") {
            if (!value.is_boolean())
                config_error(key, "must be a boolean");
            config.record_wall_time = value.get<bool>();
        } else {
            config_error(key, "is not a recognized field");
        }
    }
    if (!root.contains("n_qubits_range"))
        throw DomainError("config: missing required field 'n_qubits_range'");
    if (!root.contains("t_final_values"))
        throw DomainError("config: missing required field 't_final_values'");
    validate_sweep_config(config);
    return config;
}

std::string sweep_config_to_json(const SweepConfig& config) {
    nlohmann::ordered_json j;
    j["n_qubits_range"] = config.n_qubits_range;
    j["t_final_values"] = config.t_final_values;
    j["n_instances"] = config.n_instances;
    j["fidelity_threshold"] = config.fidelity_threshold;
    j["max_layers"] = config.max_layers;
    j["max_trotter_steps"] = config.max_trotter_steps;
    j["base_seed"] = config.base_seed;
    nlohmann::ordered_json vqs;
    vqs["ode_rel_tol"] = config.vqs_config.ode_rel_tol;
    vqs["ode_abs_tol"] = config.vqs_config.ode_abs_tol;
    if (std::isfinite(config.vqs_config.max_step))
        vqs["max_step"] = config.vqs_config.max_step;
    j["vqs_config"] = vqs;
    std::vector<std::string> names;
    for (Method m : config.methods)
        names.push_back(method_name(m));
    j["methods"] = names;
    j["record_wall_time"] = config.record_wall_time;
    return j.dump(2) + "\n";
}

std::string results_to_csv(const std::vector<RunResult>& results) {
    std::string out = "method,n_qubits,t_final,instance_seed,status,min_depth,structural_count,"
                      "final_fidelity,mclachlan_final,rhs_evaluations,wall_time_s\n";
    for (const RunResult& r : results) {
        out += method_name(r.method);
        out += ',';
        out += std::to_string(r.n_qubits);
        out += ',';
        out += format_double(r.t_final);
        out += ',';
        out += std::to_string(r.instance_seed);
        out += ',';
        out += r.solved ? "success" : "unsolved";
        out += ',';
        out += std::to_string(r.min_depth);
        out += ',';
        out += std::to_string(r.structural_count);
        out += ',';
        out += format_double(r.final_fidelity);
        out += ',';
        out += format_double(r.mclachlan_final);
        out += ',';
        if (r.rhs_evaluations >= 0)
            out += std::to_string(r.rhs_evaluations);
        out += ',';
        out += format_double(r.wall_time_seconds);
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

} // namespace

std::vector<RunResult> results_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw DomainError("results csv: empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    const std::string expected = "method,n_qubits,t_final,instance_seed,status,min_depth,"
                                 "structural_count,final_fidelity,mclachlan_final,"
                                 "rhs_evaluations,wall_time_s";
    if (line != expected)
        throw DomainError("results csv: unexpected header '" + line + "'");

    std::vector<RunResult> results;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 11)
            throw DomainError("results csv: line " + std::to_string(line_no) + " has " +
                              std::to_string(f.size()) + " fields, expected 11");
        try {
            RunResult r;
            if (f[0] == "vqs")
                r.method = Method::Vqs;
            else if (f[0] == "trotter")
                r.method = Method::Trotter;
            else
                throw DomainError("unknown method '" + f[0] + "'");
            r.n_qubits = std::stoi(f[1]);
            r.t_final = std::stod(f[2]);
            r.instance_seed = std::stoull(f[3]);
            if (f[4] == "success")
                r.solved = true;
            else if (f[4] == "unsolved")
                r.solved = false;
            else
                throw DomainError("unknown status '" + f[4] + "'");
            r.min_depth = std::stoi(f[5]);
            r.structural_count = std::stoi(f[6]);
            r.final_fidelity = f[7].empty() ? kNaN : std::stod(f[7]);
            r.mclachlan_final = f[8].empty() ? kNaN : std::stod(f[8]);
            r.rhs_evaluations = f[9].empty() ? -1 : std::stol(f[9]);
            r.wall_time_seconds = f[10].empty() ? 0.0 : std::stod(f[10]);
            results.push_back(r);
        } catch (const DomainError&) {
            throw;
        } catch (const std::exception& e) {
            throw DomainError("results csv: line " + std::to_string(line_no) +
                              " failed to parse: " + e.what());
        }
    }
    return results;
}

std::string provenance_json(const SweepConfig& config) {
    nlohmann::ordered_json j;
    j["conventions"]["rotation"] = "exp(-i*theta*P/2); trainable generators are bare X and ZZ";
    j["conventions"]["layer_order"] = "ZZ brickwall (even bonds then odd bonds), then X moment";
    j["conventions"]["depth"]["vqs"] = "3 moments per trainable layer; initial layer not counted";
    j["conventions"]["depth"]["trotter"] = "3*n_steps + 2 moments with half-steps merged";
    j["conventions"]["depth"]["trotter_unmerged_alternative"] =
        "4*n_steps + 1 moments if half-steps are kept separate";
    j["conventions"]["parameter_ranges"]["coefficients"] = "uniform on open (-1, 1)";
    j["conventions"]["parameter_ranges"]["initial_layer_angles"] = "uniform on open (-pi, pi)";
    j["rng"]["engine"] = "std::mt19937_64 with splitmix64 seed folding";
    j["rng"]["fold_rule"] = "mix64(base + 0x9e3779b97f4a7c15 * (salt + 1))";
    j["rng"]["coefficient_stream"] = "fold_seed(instance_seed, 0), x coefficients then zz";
    j["rng"]["initial_params_stream"] = "fold_seed(instance_seed, 1)";
    j["rng"]["instance_seed_rule"] = "fold_seed(fold_seed(base_seed, n_qubits), instance_index)";
    j["cost_model"]["m_formula"] = "(2*n_q - 1) * ceil(depth_vqs(n_q, n_q) / 3)";
    j["cost_model"]["k_formula"] = "max(1, round((depth_trotter(n_q, n_q) - 2) / 3))";
    j["config"] = nlohmann::ordered_json::parse(sweep_config_to_json(config));
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out)
        throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open for reading: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw IoError("read failed: " + path);
    return buffer.str();
}

} // namespace vqsim
