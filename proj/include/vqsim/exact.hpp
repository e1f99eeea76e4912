#pragma once

#include "vqsim/hamiltonian.hpp"
#include "vqsim/statevector.hpp"

namespace vqsim {

/**
 * Dense eigendecomposition H = V diag(lambda) V^dagger, reusable for any
 * evolution time: psi(t) = V exp(-i lambda t) V^dagger psi(0). Construction
 * is guarded to n_qubits <= 12; evaluation is pure and thread-safe.
 */
class ExactEvolver {
  public:
    explicit ExactEvolver(const IsingHamiltonian& h);

    StateVector evolve(double t, const StateVector& initial_state) const;

    int n_qubits() const { return n_qubits_; }

  private:
    int n_qubits_;
    RealVector eigenvalues_;
    ComplexMatrix eigenvectors_;
};

/// e^{-iHt}|initial>. Decompositions are cached per instance behind a
/// read-safe map, so repeated calls for the same instance only diagonalize
/// once per process.
StateVector exact_evolve(const ProblemInstance& instance, double t,
                         const StateVector& initial_state);

/// |<a|b>|^2. Global phase irrelevant by construction.
double fidelity(const StateVector& a, const StateVector& b);

} // namespace vqsim
