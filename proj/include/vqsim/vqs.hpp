#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqsim/ansatz.hpp"
#include "vqsim/types.hpp"

namespace vqsim {

/// Variational geometry at a fixed parameter point: the quantum Fisher
/// information matrix A, the force vector C, and <H^2>.
struct GeometrySystem {
    RealMatrix a_matrix;
    RealVector c_vector;
    double h2_expectation = 0.0;
};

struct VqsConfig {
    double ode_rel_tol = 1e-3;
    double ode_abs_tol = 1e-6;
    double max_step = std::numeric_limits<double>::infinity();
};

/// Parameter path recorded at every accepted integrator step, including t=0.
struct VqsTrajectory {
    std::vector<double> times;
    std::vector<RealVector> params;
    std::vector<double> mclachlan_distance;
    long step_count = 0;
    long rhs_evaluations = 0;
};

/// Step-size underflow (or an evaluation-budget stall) during integrate();
/// carries the trajectory accumulated up to the failure point.
class StiffnessError : public std::runtime_error {
  public:
    StiffnessError(const std::string& message, VqsTrajectory partial_trajectory)
        : std::runtime_error(message), partial(std::move(partial_trajectory)) {}

    VqsTrajectory partial;
};

/// Assembles A_ij = Re(<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>),
/// C_i = Im(<d_i psi|H|psi> + <psi|d_i psi><psi|H|psi>), and <H^2> from
/// statevector overlaps. A is mirrored from its upper triangle so it is
/// symmetric by construction.
GeometrySystem build_geometry(const HvaAnsatz& ansatz, Eigen::Ref<const RealVector> params);

/// Minimum-norm least-squares solution of A theta_dot = C via SVD, with
/// relative singular-value cutoff machine_epsilon * m. Rank deficiency is
/// absorbed by the cutoff, never an error.
RealVector solve_parameter_velocities(const GeometrySystem& system);

/// Squared residual ||(d/dt + iH)|psi>||^2 = th'A th - 2 C'th + <H^2>.
/// Raw values in (-1e-8, 0) are clipped to 0; below that the A/C assembly
/// is inconsistent and a NumericalConsistencyError is thrown.
double mclachlan_distance(const GeometrySystem& system, Eigen::Ref<const RealVector> theta_dot);

/// Integrates theta(t) from theta(0) = 0 to t_final with the adaptive
/// Dormand-Prince 4(5) stepper; every right-hand side evaluation assembles
/// the geometry and solves for the velocities. The McLachlan distance is
/// recorded at every accepted step.
VqsTrajectory integrate(const HvaAnsatz& ansatz, const VqsConfig& config, double t_final);

} // namespace vqsim
