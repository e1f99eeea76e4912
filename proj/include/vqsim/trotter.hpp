#pragma once

#include "vqsim/hamiltonian.hpp"
#include "vqsim/statevector.hpp"

namespace vqsim {

struct TrotterPlan {
    int n_steps = 1;
    double t_final = 0.0;

    TrotterPlan(int steps, double t);
};

/**
 * Second-order (Strang) Trotter evolution of the transverse-field Ising
 * Hamiltonian, splitting H = A + B with A the X terms and B the ZZ terms:
 *
 *   [B(dt/2) A(dt) B(dt/2)]^n  with dt = t/n,
 *
 * applied with the adjacent half-B steps between repetitions merged into
 * full steps: B(dt/2) A(dt) [B(dt) A(dt)]^{n-1} B(dt/2). Rotation angles
 * carry the Hamiltonian coefficients: X moments rotate by 2*a_k*dt and ZZ
 * brickwall moments by 2*b_i*dt (half-angle gate convention).
 */
StateVector trotter_evolve(const ProblemInstance& instance, const TrotterPlan& plan,
                           const StateVector& initial_state);

/// Depth in gate moments: 3*n_steps + 2 after half-step merging (n X-moments
/// of depth 1 and n+1 ZZ-brickwall blocks of depth 2). Independent of the
/// qubit count.
int trotter_depth(const TrotterPlan& plan);

} // namespace vqsim
