#include "vqsim/vqs.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "vqsim/errors.hpp"
#include "vqsim/hamiltonian.hpp"
#include "vqsim/ode.hpp"

namespace vqsim {

GeometrySystem build_geometry(const HvaAnsatz& ansatz, Eigen::Ref<const RealVector> params) {
    const Eigen::Index m = ansatz.parameter_count();
    if (params.size() != m)
        throw ShapeError("build_geometry: expected " + std::to_string(m) + " parameters, got " +
                         std::to_string(params.size()));

    const StateVector psi = prepare_state(ansatz, params);
    const StateVector h_psi = apply_hamiltonian(ansatz.instance.hamiltonian, psi);

    ComplexMatrix derivatives(psi.dim(), m);
    for (Eigen::Index k = 0; k < m; ++k)
        derivatives.col(k) = derivative_state(ansatz, params, static_cast<int>(k)).amplitudes;

    const ComplexVector overlaps = derivatives.adjoint() * psi.amplitudes;      // <d_i|psi>
    const ComplexVector h_overlaps = derivatives.adjoint() * h_psi.amplitudes;  // <d_i|H|psi>
    const double energy = psi.amplitudes.dot(h_psi.amplitudes).real();

    GeometrySystem system;
    system.a_matrix = (derivatives.adjoint() * derivatives).real() -
                      (overlaps * overlaps.adjoint()).real();
    system.a_matrix.triangularView<Eigen::StrictlyLower>() = system.a_matrix.transpose();
    system.c_vector = h_overlaps.imag() - energy * overlaps.imag();
    system.h2_expectation = h_psi.amplitudes.squaredNorm();
    return system;
}

RealVector solve_parameter_velocities(const GeometrySystem& system) {
    const Eigen::Index m = system.a_matrix.rows();
    if (system.a_matrix.cols() != m || system.c_vector.size() != m)
        throw ShapeError("solve_parameter_velocities: A and C dimensions disagree");

    Eigen::BDCSVD<RealMatrix> svd(system.a_matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(std::numeric_limits<double>::epsilon() * static_cast<double>(m));
    return svd.solve(system.c_vector);
}

double mclachlan_distance(const GeometrySystem& system, Eigen::Ref<const RealVector> theta_dot) {
    if (theta_dot.size() != system.a_matrix.rows())
        throw ShapeError("mclachlan_distance: velocity length does not match A");

    const double raw = theta_dot.dot(system.a_matrix * theta_dot) -
                       2.0 * system.c_vector.dot(theta_dot) + system.h2_expectation;
    if (raw < -1e-8)
        throw NumericalConsistencyError("mclachlan_distance: raw value " + std::to_string(raw) +
                                        " below -1e-8; A/C assembly is inconsistent");
    return raw < 0.0 ? 0.0 : raw;
}

namespace {

/// RHS for the parameter ODE. Caches the McLachlan distance of its most
/// recent evaluation so the accepted-step observer can read it back.
struct VqsRhs {
    const HvaAnsatz& ansatz;
    double last_distance = 0.0;

    RealVector operator()(double, const RealVector& theta) {
        const GeometrySystem system = build_geometry(ansatz, theta);
        RealVector theta_dot = solve_parameter_velocities(system);
        last_distance = mclachlan_distance(system, theta_dot);
        return theta_dot;
    }
};

} // namespace

VqsTrajectory integrate(const HvaAnsatz& ansatz, const VqsConfig& config, double t_final) {
    if (!(t_final > 0))
        throw DomainError("integrate: t_final must be positive");

    VqsRhs rhs{ansatz};
    VqsTrajectory trajectory;
    auto observer = [&](double t, const RealVector& theta) {
        trajectory.times.push_back(t);
        trajectory.params.push_back(theta);
        trajectory.mclachlan_distance.push_back(rhs.last_distance);
    };

    OdeOptions options;
    options.rel_tol = config.ode_rel_tol;
    options.abs_tol = config.ode_abs_tol;
    options.max_step = config.max_step;

    RealVector theta0 = RealVector::Zero(ansatz.parameter_count());
    auto outcome = integrate_dopri5(rhs, 0.0, std::move(theta0), t_final, options, observer);
    trajectory.step_count = outcome.accepted_steps;
    trajectory.rhs_evaluations = outcome.rhs_evaluations;

    if (outcome.status == OdeStatus::StepSizeUnderflow)
        throw StiffnessError("integrate: step size underflow below 1e-12 at t = " +
                                 std::to_string(outcome.t_reached),
                             std::move(trajectory));
    if (outcome.status == OdeStatus::RhsBudgetExhausted)
        throw StiffnessError("integrate: evaluation budget exhausted at t = " +
                                 std::to_string(outcome.t_reached),
                             std::move(trajectory));
    return trajectory;
}

} // namespace vqsim
