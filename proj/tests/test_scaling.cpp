#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vqsim/ansatz.hpp"
#include "vqsim/bench.hpp"
#include "vqsim/errors.hpp"
#include "vqsim/scaling.hpp"
#include "vqsim/trotter.hpp"

using vqsim::AdvantageBoundary;
using vqsim::AdvantageSide;
using vqsim::BoundaryPoint;
using vqsim::FitParams;
using vqsim::Method;
using vqsim::RunResult;
using vqsim::ThresholdCurve;

namespace {

FitParams hand_fit(Method method, double a, double b, double c) {
    FitParams fit;
    fit.method = method;
    fit.a = a;
    fit.b = b;
    fit.c = c;
    return fit;
}

FitParams reference_vqs() { return hand_fit(Method::Vqs, 1.587, 0.997, 0.743); }
FitParams reference_trotter() { return hand_fit(Method::Trotter, 3.469, 0.451, 1.287); }

RunResult depth_row(Method method, int n_qubits, double t_final, int min_depth, bool solved) {
    RunResult row;
    row.method = method;
    row.n_qubits = n_qubits;
    row.t_final = t_final;
    row.min_depth = min_depth;
    row.structural_count = min_depth / 3;
    row.solved = solved;
    row.final_fidelity = solved ? 0.96 : 0.5;
    return row;
}

} // namespace

TEST_CASE("fit recovers exact power-law data to machine accuracy") {
    std::vector<double> n_qubits, t_finals, depths;
    for (int n = 2; n <= 5; ++n) {
        for (double t : {1.0, 2.0, 4.0, 8.0}) {
            n_qubits.push_back(n);
            t_finals.push_back(t);
            depths.push_back(2.0 * std::pow(n, 1.0) * std::pow(t, 0.75));
        }
    }
    const FitParams fit = vqsim::fit_power_law(n_qubits, t_finals, depths, Method::Vqs);
    CHECK(std::abs(fit.a - 2.0) < 1e-10);
    CHECK(std::abs(fit.b - 1.0) < 1e-12);
    CHECK(std::abs(fit.c - 0.75) < 1e-12);
    CHECK(fit.se_a < 1e-8);
    CHECK(fit.se_b < 1e-10);
    CHECK(fit.se_c < 1e-10);
    CHECK(fit.n_rows == 16);
    CHECK(fit.rms_log_residual < 1e-12);
    CHECK(fit.method == Method::Vqs);

    CHECK(std::abs(vqsim::predicted_depth(fit, 6.0, 3.0) -
                   2.0 * 6.0 * std::pow(3.0, 0.75)) < 1e-9);
}

TEST_CASE("the row overload filters unsolved and short-horizon rows") {
    std::vector<RunResult> rows;
    for (int n = 2; n <= 5; ++n)
        for (int t = 1; t <= 4; ++t)
            rows.push_back(depth_row(Method::Vqs, n, t, 2 * n * t, true));
    rows.push_back(depth_row(Method::Vqs, 3, 2.0, 999, false));  // unsolved: excluded
    rows.push_back(depth_row(Method::Vqs, 3, 0.5, 3, true));     // t < 1: excluded
    rows.push_back(depth_row(Method::Trotter, 3, 2.0, 8, true)); // other method: ignored

    const FitParams fit = vqsim::fit_power_law(rows, Method::Vqs);
    CHECK(std::abs(fit.a - 2.0) < 1e-10);
    CHECK(std::abs(fit.b - 1.0) < 1e-12);
    CHECK(std::abs(fit.c - 1.0) < 1e-12);
    CHECK(fit.n_rows == 16);
    CHECK(fit.excluded_unsolved == 1);
    CHECK(fit.excluded_small_t == 1);
}

TEST_CASE("noisy synthetic depths land within three standard errors") {
    std::mt19937_64 gen(91);
    std::vector<double> n_qubits, t_finals, depths;
    const double true_a = 2.0, true_b = 1.0, true_c = 0.75;
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + i % 8;
        const double t = std::pow(2.0, i % 5);
        const double noise = 0.05 * oracles::normal_draw(gen);
        n_qubits.push_back(n);
        t_finals.push_back(t);
        depths.push_back(true_a * std::pow(n, true_b) * std::pow(t, true_c) * std::exp(noise));
    }
    const FitParams fit = vqsim::fit_power_law(n_qubits, t_finals, depths, Method::Trotter);
    CHECK(fit.n_rows == 200);
    CHECK(std::abs(fit.a - true_a) <= 3.0 * fit.se_a);
    CHECK(std::abs(fit.b - true_b) <= 3.0 * fit.se_b);
    CHECK(std::abs(fit.c - true_c) <= 3.0 * fit.se_c);
    CHECK(fit.se_b > 0.0);
    CHECK(fit.se_b < 0.05);
    CHECK(fit.rms_log_residual > 0.01);
    CHECK(fit.rms_log_residual < 0.1);
}

TEST_CASE("fit rejects thin or degenerate designs") {
    CHECK_THROWS_AS(vqsim::fit_power_law({2, 2, 3, 3}, {1, 1, 1, 2}, {6, 6, 9, 9}, Method::Vqs),
                    vqsim::InsufficientDataError);

    // Constant n_qubits: four distinct cells but a rank-2 design.
    CHECK_THROWS_AS(vqsim::fit_power_law({3, 3, 3, 3}, {1, 2, 4, 8}, {9, 12, 16, 21},
                                         Method::Vqs),
                    vqsim::InsufficientDataError);
    CHECK_THROWS_AS(vqsim::fit_power_law({2, 3, 4, 5}, {2, 2, 2, 2}, {6, 9, 12, 15},
                                         Method::Vqs),
                    vqsim::InsufficientDataError);

    CHECK_THROWS_AS(vqsim::fit_power_law({2, 3}, {1, 2, 4}, {6, 9, 12}, Method::Vqs),
                    vqsim::ShapeError);

    bool caught = false;
    try {
        vqsim::fit_power_law({2, 3, 4, 5}, {1, 2, 1, 2}, {6, 9, 0, 15}, Method::Vqs);
    } catch (const vqsim::DomainError& e) {
        caught = true;
        CHECK(std::string(e.what()).find("(row 2)") != std::string::npos);
    }
    CHECK(caught);
}

TEST_CASE("favored_method compares fitted depths pointwise") {
    const FitParams cheap = hand_fit(Method::Vqs, 1.0, 1.0, 1.0);
    const FitParams steep = hand_fit(Method::Trotter, 0.5, 1.0, 2.0);
    // Depths cross at t = 2.
    CHECK(vqsim::favored_method(cheap, steep, 4.0, 1.0) == Method::Trotter);
    CHECK(vqsim::favored_method(cheap, steep, 4.0, 3.0) == Method::Vqs);
}

TEST_CASE("the boundary curve equalizes the fitted depths") {
    const FitParams fit_vqs = reference_vqs();
    const FitParams fit_trotter = reference_trotter();
    std::vector<int> grid;
    for (int n = 2; n <= 10; ++n)
        grid.push_back(n);

    const AdvantageBoundary boundary = vqsim::advantage_boundary(fit_vqs, fit_trotter, grid);
    REQUIRE(boundary.points.size() == grid.size());
    CHECK(!boundary.uniform_domination);
    CHECK(boundary.kappa > 0.20);
    CHECK(boundary.kappa < 0.28);
    CHECK(boundary.gamma > 0.95);
    CHECK(boundary.gamma < 1.05);
    CHECK(boundary.vqs_side == AdvantageSide::LargeTf);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const BoundaryPoint& point = boundary.points[i];
        CHECK(point.n_qubits == grid[i]);
        CHECK(std::abs(point.t_f_star -
                       boundary.kappa * std::pow(point.n_qubits, boundary.gamma)) < 1e-12);
        const double d_vqs = vqsim::predicted_depth(fit_vqs, point.n_qubits, point.t_f_star);
        const double d_trotter =
            vqsim::predicted_depth(fit_trotter, point.n_qubits, point.t_f_star);
        CHECK(std::abs(d_vqs - d_trotter) / d_vqs < 1e-9);
    }

    // Independent bisection on the depth difference at n = 4.
    double lo = 1e-3, hi = 1e3;
    const auto gap = [&](double t) {
        return vqsim::predicted_depth(fit_vqs, 4.0, t) -
               vqsim::predicted_depth(fit_trotter, 4.0, t);
    };
    REQUIRE(gap(lo) * gap(hi) < 0);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (gap(lo) * gap(mid) <= 0)
            hi = mid;
        else
            lo = mid;
    }
    const double bisected = 0.5 * (lo + hi);
    CHECK(std::abs(bisected - boundary.points[2].t_f_star) < 1e-6);
}

TEST_CASE("coinciding time exponents collapse to domination or an error") {
    std::vector<int> grid;
    for (int n = 2; n <= 9; ++n)
        grid.push_back(n);

    const AdvantageBoundary dominated = vqsim::advantage_boundary(
        hand_fit(Method::Vqs, 1.0, 1.0, 1.0), hand_fit(Method::Trotter, 2.0, 1.0, 1.0), grid);
    CHECK(dominated.uniform_domination);
    CHECK(dominated.uniform_winner == Method::Vqs);
    CHECK(dominated.points.empty());

    const AdvantageBoundary reversed = vqsim::advantage_boundary(
        hand_fit(Method::Vqs, 2.0, 1.0, 1.0), hand_fit(Method::Trotter, 1.0, 1.0, 1.0), grid);
    CHECK(reversed.uniform_domination);
    CHECK(reversed.uniform_winner == Method::Trotter);

    // Same exponent in t but the winner flips with n across the grid.
    CHECK_THROWS_AS(vqsim::advantage_boundary(hand_fit(Method::Vqs, 1.0, 1.0, 1.0),
                                              hand_fit(Method::Trotter, 2.0, 0.5, 1.0), grid),
                    vqsim::DegenerateBoundaryError);

    CHECK_THROWS_AS(
        vqsim::advantage_boundary(reference_vqs(), reference_trotter(), std::vector<int>{}),
        vqsim::DomainError);
    CHECK_THROWS_AS(vqsim::advantage_boundary(reference_vqs(), reference_trotter(), {0, 2}),
                    vqsim::DomainError);
    CHECK_THROWS_AS(vqsim::advantage_boundary(hand_fit(Method::Vqs, -1.0, 1.0, 1.0),
                                              reference_trotter(), grid),
                    vqsim::DomainError);
}

TEST_CASE("classical cost threshold obeys its defining inequality") {
    const FitParams fit_vqs = reference_vqs();
    const FitParams fit_trotter = reference_trotter();

    const auto crossed = [&](double p, int n) {
        const double d_vqs = vqsim::predicted_depth(fit_vqs, n, n);
        const double d_trotter = vqsim::predicted_depth(fit_trotter, n, n);
        const double m = (2.0 * n - 1.0) * std::ceil(d_vqs / 3.0);
        const double k = std::max(1.0, std::round((d_trotter - 2.0) / 3.0));
        return p * m * m * m < k * std::pow(2.0, n);
    };

    const std::optional<int> at_one = vqsim::classical_cost_threshold(fit_vqs, fit_trotter, 1.0,
                                                                      2, 40);
    REQUIRE(at_one.has_value());
    CHECK(*at_one <= 40);
    CHECK(crossed(1.0, *at_one));
    if (*at_one > 2)
        CHECK(!crossed(1.0, *at_one - 1));

    CHECK(vqsim::classical_cost_threshold(fit_vqs, fit_trotter, 0.0, 2, 40) == 2);
    CHECK(!vqsim::classical_cost_threshold(fit_vqs, fit_trotter, 1e30, 2, 20).has_value());

    std::optional<int> previous;
    for (double p : {1e-4, 1e-2, 1.0, 1e2, 1e4}) {
        const std::optional<int> threshold =
            vqsim::classical_cost_threshold(fit_vqs, fit_trotter, p, 2, 60);
        REQUIRE(threshold.has_value());
        if (previous.has_value())
            CHECK(*threshold >= *previous);
        previous = threshold;
    }

    CHECK_THROWS_AS(vqsim::classical_cost_threshold(fit_vqs, fit_trotter, -1.0, 2, 40),
                    vqsim::DomainError);
    CHECK_THROWS_AS(vqsim::classical_cost_threshold(fit_vqs, fit_trotter, 1.0, 0, 40),
                    vqsim::DomainError);
    CHECK_THROWS_AS(vqsim::classical_cost_threshold(fit_vqs, fit_trotter, 1.0, 5, 4),
                    vqsim::DomainError);
}

TEST_CASE("the cost model constants match the circuit engines") {
    const vqsim::ProblemInstance instance = vqsim::random_instance(4, 92);
    const vqsim::HvaAnsatz ansatz(instance, 1);
    CHECK(vqsim::CostModel::params_per_layer(4) == ansatz.params_per_layer());
    CHECK(vqsim::CostModel::depth_per_layer == vqsim::circuit_depth(ansatz));
    CHECK(vqsim::trotter_depth(vqsim::TrotterPlan(7, 1.0)) ==
          3 * 7 + vqsim::CostModel::trotter_depth_offset);
    CHECK(vqsim::CostModel{}.prefactor_p == 1.0);
}

TEST_CASE("fit JSON round-trips and validates") {
    FitParams fit = reference_vqs();
    fit.se_a = 0.05;
    fit.se_b = 0.01;
    fit.se_c = 0.02;
    fit.n_rows = 160;
    fit.rms_log_residual = 0.07;

    const std::string text = vqsim::fit_to_json(fit);
    const FitParams parsed = vqsim::fit_from_json(text);
    CHECK(parsed.method == Method::Vqs);
    CHECK(parsed.a == fit.a);
    CHECK(parsed.b == fit.b);
    CHECK(parsed.c == fit.c);
    CHECK(parsed.se_a == fit.se_a);
    CHECK(parsed.se_b == fit.se_b);
    CHECK(parsed.se_c == fit.se_c);
    CHECK(parsed.n_rows == 160);
    CHECK(parsed.rms_log_residual == fit.rms_log_residual);
    CHECK(vqsim::fit_to_json(parsed) == text);

    CHECK_THROWS_AS(vqsim::fit_from_json("not json"), vqsim::DomainError);
    CHECK_THROWS_AS(vqsim::fit_from_json("[]"), vqsim::DomainError);
    CHECK_THROWS_AS(vqsim::fit_from_json("{\"a\": 1.0}"), vqsim::DomainError);
    CHECK_THROWS_AS(vqsim::fit_from_json("{\"method\": \"qaoa\", \"a\": 1.0}"),
                    vqsim::DomainError);
    CHECK_THROWS_AS(vqsim::fit_from_json("{\"method\": \"vqs\", \"a\": -1.0}"),
                    vqsim::DomainError);
    CHECK_THROWS_AS(vqsim::fit_from_json("{\"method\": \"vqs\", \"a\": 1.0, \"zzz\": 2}"),
                    vqsim::DomainError);
}

TEST_CASE("boundary and threshold CSV round trips") {
    AdvantageBoundary boundary;
    boundary.points = {{2, 0.5}, {3, 0.75}, {4, 1.0625}};
    const std::string boundary_csv = vqsim::boundary_to_csv(boundary);
    CHECK(boundary_csv == "n_qubits,t_f_star\n2,0.5\n3,0.75\n4,1.0625\n");
    const std::vector<BoundaryPoint> points = vqsim::boundary_points_from_csv(boundary_csv);
    REQUIRE(points.size() == 3);
    CHECK(points[1].n_qubits == 3);
    CHECK(points[1].t_f_star == 0.75);
    CHECK_THROWS_AS(vqsim::boundary_points_from_csv(""), vqsim::DomainError);
    CHECK_THROWS_AS(vqsim::boundary_points_from_csv("wrong\n"), vqsim::DomainError);
    CHECK_THROWS_AS(vqsim::boundary_points_from_csv("n_qubits,t_f_star\nnope\n"),
                    vqsim::DomainError);

    const ThresholdCurve curve = {{0.1, 5}, {1.0, std::nullopt}, {10.0, 12}};
    const std::string curve_csv = vqsim::thresholds_to_csv(curve);
    CHECK(curve_csv == "p,n_q_threshold\n0.1,5\n1,\n10,12\n");
    const ThresholdCurve parsed = vqsim::thresholds_from_csv(curve_csv);
    REQUIRE(parsed.size() == 3);
    CHECK(parsed[0].second == 5);
    CHECK(!parsed[1].second.has_value());
    CHECK(parsed[2].first == 10.0);
    CHECK_THROWS_AS(vqsim::thresholds_from_csv("p,n_q_threshold\n0.1;5\n"), vqsim::DomainError);
}

TEST_CASE("emit_plot_data writes the four deterministic views") {
    std::vector<RunResult> rows;
    rows.push_back(depth_row(Method::Vqs, 2, 2.0, 6, true));
    rows.push_back(depth_row(Method::Vqs, 2, 2.0, 12, true));
    rows.push_back(depth_row(Method::Vqs, 3, 3.0, 9, true));
    rows.push_back(depth_row(Method::Trotter, 2, 2.0, 5, true));
    rows.push_back(depth_row(Method::Trotter, 2, 1.5, 20, false));

    const std::vector<BoundaryPoint> boundary = {{2, 0.5}, {3, 0.8}};
    const ThresholdCurve thresholds = {{0.1, 5}, {1.0, std::nullopt}};

    const std::string out_dir = "plot_data_test_dir";
    const vqsim::PlotFiles files =
        vqsim::emit_plot_data(rows, boundary, thresholds, out_dir);

    const std::string fig_nq = vqsim::read_text_file(files.depth_vs_nqubits);
    CHECK(fig_nq == "method,n_qubits,mean_min_depth,median_min_depth,n_success,n_unsolved\n"
                    "vqs,2,9,9,2,0\n"
                    "vqs,3,9,9,1,0\n"
                    "trotter,2,5,5,1,0\n");

    const std::string fig_tf = vqsim::read_text_file(files.depth_vs_tfinal);
    CHECK(fig_tf ==
          "method,n_qubits,t_final,mean_min_depth,median_min_depth,n_success,n_unsolved\n"
          "vqs,2,2,9,9,2,0\n"
          "vqs,3,3,9,9,1,0\n"
          "trotter,2,1.5,,,0,1\n"
          "trotter,2,2,5,5,1,0\n");

    const std::string fig_map = vqsim::read_text_file(files.advantage_map);
    CHECK(fig_map == "series,n_qubits,t_final\n"
                     "boundary,2,0.5\n"
                     "boundary,3,0.8\n"
                     "simulated,2,1.5\n"
                     "simulated,2,2\n"
                     "simulated,3,3\n");

    const std::string fig_threshold = vqsim::read_text_file(files.threshold_curve);
    CHECK(fig_threshold == "p,n_q_threshold\n0.1,5\n1,\n");

    // Re-emitting the same inputs reproduces the bytes.
    vqsim::emit_plot_data(rows, boundary, thresholds, out_dir);
    CHECK(vqsim::read_text_file(files.depth_vs_nqubits) == fig_nq);
    CHECK(vqsim::read_text_file(files.depth_vs_tfinal) == fig_tf);
    CHECK(vqsim::read_text_file(files.advantage_map) == fig_map);

    const vqsim::PlotFiles empty = vqsim::emit_plot_data({}, {}, {}, out_dir);
    CHECK(vqsim::read_text_file(empty.depth_vs_nqubits) ==
          "method,n_qubits,mean_min_depth,median_min_depth,n_success,n_unsolved\n");
    CHECK(vqsim::read_text_file(empty.depth_vs_tfinal) ==
          "method,n_qubits,t_final,mean_min_depth,median_min_depth,n_success,n_unsolved\n");
    CHECK(vqsim::read_text_file(empty.advantage_map) == "series,n_qubits,t_final\n");
    CHECK(vqsim::read_text_file(empty.threshold_curve) == "p,n_q_threshold\n");
}
