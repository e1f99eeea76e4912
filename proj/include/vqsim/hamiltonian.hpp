#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vqsim/pauli.hpp"
#include "vqsim/statevector.hpp"
#include "vqsim/types.hpp"

namespace vqsim {

/**
 * Nearest-neighbour 1D transverse-field Ising model on an open chain:
 * n_qubits one-body X terms and n_qubits-1 adjacent ZZ bonds. Immutable
 * after construction; safe to share across threads.
 */
struct IsingHamiltonian {
    int n_qubits = 0;
    std::vector<PauliTerm> x_terms;  // a_k X_k, k = 0..n-1
    std::vector<PauliTerm> zz_terms; // b_i Z_i Z_{i+1}, i = 0..n-2

    IsingHamiltonian() = default;
    IsingHamiltonian(int n, std::vector<double> a, std::vector<double> b);

    std::vector<double> x_coefficients() const;
    std::vector<double> zz_coefficients() const;
};

/// One dynamical problem: Hamiltonian plus the fixed parameters of the
/// non-trainable first ansatz layer. Bit-reproducible from (n_qubits, seed).
struct ProblemInstance {
    IsingHamiltonian hamiltonian;
    RealVector initial_layer_params; // length 2*n_qubits-1, radians
    std::uint64_t seed = 0;

    int n_qubits() const { return hamiltonian.n_qubits; }
};

/// Draws coefficients i.i.d. uniform on (-1,1) and initial-layer angles
/// i.i.d. uniform on (-pi,pi). Substream rule: fold_seed(seed, 0) seeds the
/// coefficient stream (x coefficients first, then zz), fold_seed(seed, 1)
/// the initial-parameter stream.
ProblemInstance random_instance(int n_qubits, std::uint64_t seed);

/// H|state>, summing terms in declaration order (x_terms then zz_terms).
StateVector apply_hamiltonian(const IsingHamiltonian& h, const StateVector& state);

/// <state|H|state> for a normalized state; the ~1e-10 imaginary residue is discarded.
double expectation_h(const IsingHamiltonian& h, const StateVector& state);

/// <state|H^2|state> = ||H|state>||^2 for a normalized state.
double expectation_h2(const IsingHamiltonian& h, const StateVector& state);

/// Dense Hermitian 2^n x 2^n matrix of H. Guarded to n_qubits <= 12.
ComplexMatrix dense_matrix(const IsingHamiltonian& h);

/// Instance serialization used by the CLI: {n_qubits, seed, a, b, initial_layer_params}.
std::string instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const std::string& text);

} // namespace vqsim
