#pragma once

#include <string>

#include "vqsim/errors.hpp"

namespace vqsim {

/// One weighted Pauli term of the Ising Hamiltonian: either a one-body
/// X_k or a two-body Z_i Z_{i+1} on adjacent qubits of the open chain.
struct PauliTerm {
    enum class Kind { X, ZZ };

    double coefficient = 0.0;
    Kind kind = Kind::X;
    int qubit_a = 0;
    int qubit_b = 0; // unused for Kind::X

    static PauliTerm x(double coefficient, int qubit) {
        return PauliTerm{coefficient, Kind::X, qubit, 0};
    }

    static PauliTerm zz(double coefficient, int qubit_a, int qubit_b) {
        if (qubit_b != qubit_a + 1)
            throw DomainError("PauliTerm: ZZ terms act on adjacent qubits (j = i+1)");
        return PauliTerm{coefficient, Kind::ZZ, qubit_a, qubit_b};
    }
};

} // namespace vqsim
