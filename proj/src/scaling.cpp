#include "vqsim/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "vqsim/errors.hpp"

namespace vqsim {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Method method_from_name(const std::string& name, const std::string& context) {
    if (name == "vqs")
        return Method::Vqs;
    if (name == "trotter")
        return Method::Trotter;
    throw DomainError(context + ": unknown method '" + name + "'");
}

} // namespace

FitParams fit_power_law(const std::vector<double>& n_qubits, const std::vector<double>& t_finals,
                        const std::vector<double>& depths, Method method) {
    const std::size_t n = n_qubits.size();
    if (t_finals.size() != n || depths.size() != n)
        throw ShapeError("fit_power_law: input vectors must have equal length");
    for (std::size_t i = 0; i < n; ++i)
        if (!(n_qubits[i] > 0) || !(t_finals[i] > 0) || !(depths[i] > 0))
            throw DomainError("fit_power_law: inputs must be strictly positive (row " +
                              std::to_string(i) + ")");

    std::set<std::pair<double, double>> cells;
    for (std::size_t i = 0; i < n; ++i)
        cells.emplace(n_qubits[i], t_finals[i]);
    if (cells.size() < 4)
        throw InsufficientDataError("fit_power_law: need at least 4 distinct (n_qubits, t_final) "
                                    "cells, found " +
                                    std::to_string(cells.size()));

    const auto rows = static_cast<Eigen::Index>(n);
    RealMatrix design(rows, 3);
    RealVector response(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = std::log(n_qubits[static_cast<std::size_t>(i)]);
        design(i, 2) = std::log(t_finals[static_cast<std::size_t>(i)]);
        response(i) = std::log(depths[static_cast<std::size_t>(i)]);
    }

    Eigen::ColPivHouseholderQR<RealMatrix> qr(design);
    if (qr.rank() < 3)
        throw InsufficientDataError(
            "fit_power_law: design is rank deficient; vary both n_qubits and t_final");

    const RealVector beta = qr.solve(response);
    const RealVector residual = response - design * beta;
    const double rss = residual.squaredNorm();
    const double sigma2 = rss / static_cast<double>(rows - 3);
    const RealMatrix covariance = sigma2 * (design.transpose() * design).inverse();

    FitParams fit;
    fit.method = method;
    fit.a = std::exp(beta(0));
    fit.b = beta(1);
    fit.c = beta(2);
    fit.se_a = fit.a * std::sqrt(covariance(0, 0)); // delta method through exp
    fit.se_b = std::sqrt(covariance(1, 1));
    fit.se_c = std::sqrt(covariance(2, 2));
    fit.n_rows = static_cast<int>(rows);
    fit.rms_log_residual = std::sqrt(rss / static_cast<double>(rows));
    return fit;
}

FitParams fit_power_law(const std::vector<RunResult>& rows, Method method) {
    std::vector<double> n_qubits, t_finals, depths;
    int excluded_unsolved = 0;
    int excluded_small_t = 0;
    for (const RunResult& r : rows) {
        if (r.method != method)
            continue;
        if (!r.solved) {
            ++excluded_unsolved;
            continue;
        }
        if (r.t_final < 1.0 || r.n_qubits <= 0 || r.min_depth <= 0) {
            ++excluded_small_t;
            continue;
        }
        n_qubits.push_back(static_cast<double>(r.n_qubits));
        t_finals.push_back(r.t_final);
        depths.push_back(static_cast<double>(r.min_depth));
    }
    FitParams fit = fit_power_law(n_qubits, t_finals, depths, method);
    fit.excluded_unsolved = excluded_unsolved;
    fit.excluded_small_t = excluded_small_t;
    return fit;
}

double predicted_depth(const FitParams& fit, double n_qubits, double t_final) {
    return fit.a * std::pow(n_qubits, fit.b) * std::pow(t_final, fit.c);
}

Method favored_method(const FitParams& fit_vqs, const FitParams& fit_trotter, double n_qubits,
                      double t_final) {
    return predicted_depth(fit_vqs, n_qubits, t_final) <=
                   predicted_depth(fit_trotter, n_qubits, t_final)
               ? Method::Vqs
               : Method::Trotter;
}

AdvantageBoundary advantage_boundary(const FitParams& fit_vqs, const FitParams& fit_trotter,
                                     const std::vector<int>& n_q_grid) {
    if (n_q_grid.empty())
        throw DomainError("advantage_boundary: n_q_grid must be nonempty");
    for (int n : n_q_grid)
        if (n < 1)
            throw DomainError("advantage_boundary: grid entries must be positive");
    if (!(fit_vqs.a > 0) || !(fit_trotter.a > 0))
        throw DomainError("advantage_boundary: fit prefactors must be positive");

    AdvantageBoundary boundary;
    const double dc = fit_vqs.c - fit_trotter.c;
    const double tol =
        1e-12 * std::max({1.0, std::abs(fit_vqs.c), std::abs(fit_trotter.c)});
    if (std::abs(dc) <= tol) {
        // Equal time exponents: depth ratio is t-independent, so either one
        // method dominates the whole grid or no boundary classification exists.
        bool vqs_everywhere = true, trotter_everywhere = true;
        for (int n : n_q_grid) {
            const double d_vqs = predicted_depth(fit_vqs, n, 1.0);
            const double d_trotter = predicted_depth(fit_trotter, n, 1.0);
            if (!(d_vqs < d_trotter))
                vqs_everywhere = false;
            if (!(d_trotter < d_vqs))
                trotter_everywhere = false;
        }
        if (!vqs_everywhere && !trotter_everywhere)
            throw DegenerateBoundaryError(
                "advantage_boundary: time exponents coincide and neither method dominates "
                "the grid; no boundary exists");
        boundary.uniform_domination = true;
        boundary.uniform_winner = vqs_everywhere ? Method::Vqs : Method::Trotter;
        boundary.vqs_side = AdvantageSide::LargeTf;
        return boundary;
    }

    boundary.kappa = std::pow(fit_trotter.a / fit_vqs.a, 1.0 / dc);
    boundary.gamma = (fit_trotter.b - fit_vqs.b) / dc;
    boundary.points.reserve(n_q_grid.size());
    for (int n : n_q_grid)
        boundary.points.push_back({n, boundary.kappa * std::pow(n, boundary.gamma)});

    const int probe_n = n_q_grid.front();
    const double probe_t = 2.0 * boundary.points.front().t_f_star;
    boundary.vqs_side = favored_method(fit_vqs, fit_trotter, probe_n, probe_t) == Method::Vqs
                            ? AdvantageSide::LargeTf
                            : AdvantageSide::SmallTf;
    return boundary;
}

std::optional<int> classical_cost_threshold(const FitParams& fit_vqs,
                                            const FitParams& fit_trotter, double p, int n_q_min,
                                            int n_q_max) {
    if (p < 0)
        throw DomainError("classical_cost_threshold: p must be nonnegative");
    if (n_q_min < 1 || n_q_max < n_q_min)
        throw DomainError("classical_cost_threshold: invalid search range");

    for (int n = n_q_min; n <= n_q_max; ++n) {
        const double depth_vqs = predicted_depth(fit_vqs, n, n);
        const double depth_trotter = predicted_depth(fit_trotter, n, n);
        const double m = (2.0 * n - 1.0) * std::ceil(depth_vqs / CostModel::depth_per_layer);
        const double k = std::max(
            1.0, std::round((depth_trotter - CostModel::trotter_depth_offset) /
                            CostModel::depth_per_layer));
        if (p * m * m * m < k * std::ldexp(1.0, n))
            return n;
    }
    return std::nullopt;
}

std::string fit_to_json(const FitParams& fit) {
    nlohmann::ordered_json j;
    j["method"] = method_name(fit.method);
    j["a"] = fit.a;
    j["b"] = fit.b;
    j["c"] = fit.c;
    j["se_a"] = fit.se_a;
    j["se_b"] = fit.se_b;
    j["se_c"] = fit.se_c;
    j["n_rows"] = fit.n_rows;
    j["rms_log_residual"] = fit.rms_log_residual;
    return j.dump(2) + "\n";
}

FitParams fit_from_json(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("fit json: not valid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw DomainError("fit json: top level must be an object");

    FitParams fit;
    bool saw_method = false;
    for (const auto& [key, value] : root.items()) {
        if (key == "method") {
            if (!value.is_string())
                throw DomainError("fit json: field 'method' must be a string");
            fit.method = method_from_name(value.get<std::string>(), "fit json");
            saw_method = true;
        } else if (key == "n_rows") {
            if (!value.is_number_integer())
                throw DomainError("fit json: field 'n_rows' must be an integer");
            fit.n_rows = value.get<int>();
        } else {
            double* slot = nullptr;
            if (key == "a")
                slot = &fit.a;
            else if (key == "b")
                slot = &fit.b;
            else if (key == "c")
                slot = &fit.c;
            else if (key == "se_a")
                slot = &fit.se_a;
            else if (key == "se_b")
                slot = &fit.se_b;
            else if (key == "se_c")
                slot = &fit.se_c;
            else if (key == "rms_log_residual")
                slot = &fit.rms_log_residual;
            if (slot == nullptr)
                throw DomainError("fit json: field '" + key + "' is not recognized");
            if (!value.is_number())
                throw DomainError("fit json: field '" + key + "' must be a number");
            *slot = value.get<double>();
        }
    }
    if (!saw_method)
        throw DomainError("fit json: missing required field 'method'");
    if (!(fit.a > 0))
        throw DomainError("fit json: field 'a' must be positive");
    return fit;
}

std::string boundary_to_csv(const AdvantageBoundary& boundary) {
    std::string out = "n_qubits,t_f_star\n";
    for (const BoundaryPoint& point : boundary.points) {
        out += std::to_string(point.n_qubits);
        out += ',';
        out += format_double(point.t_f_star);
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> csv_lines(const std::string& text, const std::string& header,
                                   const std::string& context) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw DomainError(context + ": empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != header)
        throw DomainError(context + ": unexpected header '" + line + "'");
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!line.empty())
            lines.push_back(line);
    }
    return lines;
}

} // namespace

std::vector<BoundaryPoint> boundary_points_from_csv(const std::string& text) {
    std::vector<BoundaryPoint> points;
    for (const std::string& line : csv_lines(text, "n_qubits,t_f_star", "boundary csv")) {
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw DomainError("boundary csv: malformed line '" + line + "'");
        try {
            points.push_back(
                {std::stoi(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
        } catch (const std::exception&) {
            throw DomainError("boundary csv: malformed line '" + line + "'");
        }
    }
    return points;
}

std::string thresholds_to_csv(const ThresholdCurve& curve) {
    std::string out = "p,n_q_threshold\n";
    for (const auto& [p, threshold] : curve) {
        out += format_double(p);
        out += ',';
        if (threshold.has_value())
            out += std::to_string(*threshold);
        out += '\n';
    }
    return out;
}

ThresholdCurve thresholds_from_csv(const std::string& text) {
    ThresholdCurve curve;
    for (const std::string& line : csv_lines(text, "p,n_q_threshold", "threshold csv")) {
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw DomainError("threshold csv: malformed line '" + line + "'");
        try {
            const double p = std::stod(line.substr(0, comma));
            const std::string rest = line.substr(comma + 1);
            if (rest.empty())
                curve.emplace_back(p, std::nullopt);
            else
                curve.emplace_back(p, std::stoi(rest));
        } catch (const std::exception&) {
            throw DomainError("threshold csv: malformed line '" + line + "'");
        }
    }
    return curve;
}

namespace {

struct CellAggregate {
    std::vector<double> success_depths;
    int n_unsolved = 0;
};

std::string aggregate_row(const std::vector<double>& depths) {
    if (depths.empty())
        return ",";
    double sum = 0.0;
    for (double d : depths)
        sum += d;
    std::vector<double> sorted = depths;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    const double median =
        sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    return format_double(sum / static_cast<double>(depths.size())) + "," + format_double(median);
}

} // namespace

PlotFiles emit_plot_data(const std::vector<RunResult>& rows,
                         const std::vector<BoundaryPoint>& boundary,
                         const ThresholdCurve& thresholds, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create directory: " + out_dir + " (" + ec.message() + ")");

    std::map<std::tuple<int, int, double>, CellAggregate> cells; // (method, n_q, t_f)
    std::set<std::pair<int, double>> simulated;
    for (const RunResult& r : rows) {
        auto& cell = cells[{static_cast<int>(r.method), r.n_qubits, r.t_final}];
        if (r.solved)
            cell.success_depths.push_back(static_cast<double>(r.min_depth));
        else
            ++cell.n_unsolved;
        simulated.emplace(r.n_qubits, r.t_final);
    }

    std::string fig_nq = "method,n_qubits,mean_min_depth,median_min_depth,n_success,n_unsolved\n";
    std::string fig_tf =
        "method,n_qubits,t_final,mean_min_depth,median_min_depth,n_success,n_unsolved\n";
    for (const auto& [key, cell] : cells) {
        const auto& [method_index, n_qubits, t_final] = key;
        const std::string method = method_name(static_cast<Method>(method_index));
        const std::string stats = aggregate_row(cell.success_depths);
        const std::string counts = std::to_string(cell.success_depths.size()) + "," +
                                   std::to_string(cell.n_unsolved);
        fig_tf += method + "," + std::to_string(n_qubits) + "," + format_double(t_final) + "," +
                  stats + "," + counts + "\n";
        if (std::abs(t_final - n_qubits) <= 1e-9)
            fig_nq += method + "," + std::to_string(n_qubits) + "," + stats + "," + counts + "\n";
    }

    std::string fig_map = "series,n_qubits,t_final\n";
    for (const BoundaryPoint& point : boundary)
        fig_map +=
            "boundary," + std::to_string(point.n_qubits) + "," + format_double(point.t_f_star) +
            "\n";
    for (const auto& [n_qubits, t_final] : simulated)
        fig_map += "simulated," + std::to_string(n_qubits) + "," + format_double(t_final) + "\n";

    PlotFiles files;
    files.depth_vs_nqubits = (fs::path(out_dir) / "depth_vs_nqubits.csv").string();
    files.depth_vs_tfinal = (fs::path(out_dir) / "depth_vs_tfinal.csv").string();
    files.advantage_map = (fs::path(out_dir) / "advantage_map.csv").string();
    files.threshold_curve = (fs::path(out_dir) / "threshold_vs_p.csv").string();
    write_text_file(files.depth_vs_nqubits, fig_nq);
    write_text_file(files.depth_vs_tfinal, fig_tf);
    write_text_file(files.advantage_map, fig_map);
    write_text_file(files.threshold_curve, thresholds_to_csv(thresholds));
    return files;
}

} // namespace vqsim
