#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vqsim/hamiltonian.hpp"
#include "vqsim/types.hpp"
#include "vqsim/vqs.hpp"

namespace vqsim {

struct SweepConfig {
    std::vector<int> n_qubits_range;
    std::vector<double> t_final_values;
    int n_instances = 5;
    double fidelity_threshold = 0.95;
    int max_layers = 50;
    int max_trotter_steps = 1000;
    std::uint64_t base_seed = 1;
    VqsConfig vqs_config;
    std::vector<Method> methods{Method::Vqs, Method::Trotter};
    /// Off by default so identical configs produce byte-identical CSVs;
    /// when enabled the wall_time_s column carries real measurements.
    bool record_wall_time = false;
};

/// One benchmark cell outcome. Absent values (Trotter has no McLachlan
/// distance or RHS count; unsolved cells may have no completed attempt)
/// are NaN for reals and -1 for rhs_evaluations.
struct RunResult {
    Method method = Method::Vqs;
    int n_qubits = 0;
    double t_final = 0.0;
    std::uint64_t instance_seed = 0;
    bool solved = false;
    int min_depth = 0;
    int structural_count = 0; // layers for VQS, steps for Trotter
    double final_fidelity = 0.0;
    double mclachlan_final = 0.0;
    long rhs_evaluations = -1;
    double wall_time_seconds = 0.0;
};

/// Seed of sweep instance `index` at a given qubit count. Instances are
/// shared across t_final values and methods within a sweep.
std::uint64_t sweep_instance_seed(std::uint64_t base_seed, int n_qubits, int index);

/// Adaptive minimum-depth search for VQS: integrates with n_layers = 1, 2,
/// ... (restarting from scratch) until the final-time fidelity against the
/// exact oracle reaches the threshold. Exceeding max_layers yields an
/// unsolved result, never an exception; stiffness failures on an attempt
/// count as that attempt failing.
RunResult min_depth_vqs(const ProblemInstance& instance, double t_final, double threshold,
                        const VqsConfig& config, int max_layers = 50);

/// Same search for second-order Trotter, incrementing n_steps by 1 from 1.
RunResult min_depth_trotter(const ProblemInstance& instance, double t_final, double threshold,
                            int max_steps = 1000);

/// Fidelity achieved by one method at a fixed structural count (layers or
/// steps), used to replay success rows and probe minimality.
double replay_fidelity(const ProblemInstance& instance, Method method, int structural_count,
                       double t_final, const VqsConfig& config);

/// Runs every (method, n_qubits, t_final, instance) cell of the config on a
/// pool of `jobs` workers. Results come back in canonical (method, n_qubits,
/// t_final, instance_seed) order with content independent of scheduling.
std::vector<RunResult> run_sweep(const SweepConfig& config, int jobs = 1);

/// Strict parser: unknown keys, wrong types, or out-of-range values throw
/// DomainError naming the offending field path.
SweepConfig sweep_config_from_json(const std::string& text);
std::string sweep_config_to_json(const SweepConfig& config);

std::string results_to_csv(const std::vector<RunResult>& results);
std::vector<RunResult> results_from_csv(const std::string& text);

/// Conventions block (rotation and depth accounting, parameter ranges, RNG
/// derivation rules, cost-model formulas) plus the config echo.
std::string provenance_json(const SweepConfig& config);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace vqsim
