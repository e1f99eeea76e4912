#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vqsim/bench.hpp"
#include "vqsim/types.hpp"

namespace vqsim {

/// Power-law depth model D(n_q, t_f) = a * n_q^b * t_f^c with standard
/// errors from the log-space linear fit.
struct FitParams {
    Method method = Method::Vqs;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double se_a = 0.0;
    double se_b = 0.0;
    double se_c = 0.0;
    int n_rows = 0;
    double rms_log_residual = 0.0;
    int excluded_unsolved = 0;
    int excluded_small_t = 0;
};

/// Constants tying the classical-cost comparison to the circuit structure.
struct CostModel {
    double prefactor_p = 1.0;
    static int params_per_layer(int n_qubits) { return 2 * n_qubits - 1; }
    static constexpr int depth_per_layer = 3;
    static constexpr int trotter_depth_offset = 2;
};

/// Ordinary least squares on log D = log a + b log n_q + c log t_f.
/// Inputs must be strictly positive, cover at least 4 distinct
/// (n_qubits, t_final) pairs, and span a full-rank design, otherwise
/// InsufficientDataError (DomainError for nonpositive values).
FitParams fit_power_law(const std::vector<double>& n_qubits, const std::vector<double>& t_finals,
                        const std::vector<double>& depths, Method method);

/// Same fit fed from sweep rows of one method. Unsolved rows and rows with
/// t_final < 1 are excluded; the counts are recorded on the result.
FitParams fit_power_law(const std::vector<RunResult>& rows, Method method);

double predicted_depth(const FitParams& fit, double n_qubits, double t_final);

/// Which method the fitted models favor (smaller predicted depth) at a point.
Method favored_method(const FitParams& fit_vqs, const FitParams& fit_trotter, double n_qubits,
                      double t_final);

struct BoundaryPoint {
    int n_qubits = 0;
    double t_f_star = 0.0;
};

/// Side of the boundary (in t_final) where VQS has the smaller fitted depth.
enum class AdvantageSide { LargeTf, SmallTf };

struct AdvantageBoundary {
    std::vector<BoundaryPoint> points;
    double kappa = 0.0; // t_f*(n_q) = kappa * n_q^gamma
    double gamma = 0.0;
    AdvantageSide vqs_side = AdvantageSide::LargeTf;
    /// True when the time exponents coincide and one method dominates the
    /// whole grid; points is then empty and uniform_winner says which.
    bool uniform_domination = false;
    Method uniform_winner = Method::Vqs;
};

/// Equal-depth curve t_f*(n_q) = [(a_T/a_V) * n_q^(b_T-b_V)]^(1/(c_V-c_T)).
/// Coinciding time exponents with a grid-wide dominant method yield the
/// uniform_domination result; a mixed grid raises DegenerateBoundaryError.
AdvantageBoundary advantage_boundary(const FitParams& fit_vqs, const FitParams& fit_trotter,
                                     const std::vector<int>& n_q_grid);

/// Smallest n_q in [n_q_min, n_q_max] with p*m^3 < k*2^n_q along t_f = n_q,
/// where m = (2n_q-1)*ceil(D_vqs/3) and k = max(1, round((D_trotter-2)/3)).
std::optional<int> classical_cost_threshold(const FitParams& fit_vqs,
                                            const FitParams& fit_trotter, double p, int n_q_min,
                                            int n_q_max);

std::string fit_to_json(const FitParams& fit);
FitParams fit_from_json(const std::string& text);

std::string boundary_to_csv(const AdvantageBoundary& boundary);
std::vector<BoundaryPoint> boundary_points_from_csv(const std::string& text);

using ThresholdCurve = std::vector<std::pair<double, std::optional<int>>>;
std::string thresholds_to_csv(const ThresholdCurve& curve);
ThresholdCurve thresholds_from_csv(const std::string& text);

struct PlotFiles {
    std::string depth_vs_nqubits;
    std::string depth_vs_tfinal;
    std::string advantage_map;
    std::string threshold_curve;
};

/// Writes the four plot-ready CSVs into out_dir (created if missing):
/// per-cell mean/median depth vs n_qubits along t_f = n_q, the same vs
/// t_final, the boundary curve with the simulated-cell dots, and the
/// threshold-vs-p curve. Empty inputs produce header-only files.
PlotFiles emit_plot_data(const std::vector<RunResult>& rows,
                         const std::vector<BoundaryPoint>& boundary,
                         const ThresholdCurve& thresholds, const std::string& out_dir);

} // namespace vqsim
