#include "vqsim/trotter.hpp"

#include "vqsim/ansatz.hpp"
#include "vqsim/errors.hpp"

namespace vqsim {

TrotterPlan::TrotterPlan(int steps, double t) : n_steps(steps), t_final(t) {
    if (n_steps < 1)
        throw DomainError("TrotterPlan: n_steps must be at least 1");
    if (!(t_final > 0))
        throw DomainError("TrotterPlan: t_final must be positive");
}

StateVector trotter_evolve(const ProblemInstance& instance, const TrotterPlan& plan,
                           const StateVector& initial_state) {
    if (initial_state.n_qubits != instance.n_qubits())
        throw ShapeError("trotter_evolve: state and instance qubit counts differ");

    const double dt = plan.t_final / plan.n_steps;
    const auto& h = instance.hamiltonian;
    const std::vector<double> a = h.x_coefficients();
    const std::vector<double> b = h.zz_coefficients();
    const RealVector x_angles =
        2.0 * dt * Eigen::Map<const RealVector>(a.data(), static_cast<Eigen::Index>(a.size()));
    const RealVector zz_full =
        2.0 * dt * Eigen::Map<const RealVector>(b.data(), static_cast<Eigen::Index>(b.size()));
    const RealVector zz_half = 0.5 * zz_full;

    StateVector state = initial_state;
    apply_zz_brickwall(state, zz_half);
    apply_x_moment(state, x_angles);
    for (int step = 1; step < plan.n_steps; ++step) {
        apply_zz_brickwall(state, zz_full);
        apply_x_moment(state, x_angles);
    }
    apply_zz_brickwall(state, zz_half);
    return state;
}

int trotter_depth(const TrotterPlan& plan) { return 3 * plan.n_steps + 2; }

} // namespace vqsim
