#pragma once

#include "vqsim/hamiltonian.hpp"
#include "vqsim/statevector.hpp"
#include "vqsim/types.hpp"

namespace vqsim {

/**
 * Layered Hamiltonian Variational Ansatz for the open Ising chain.
 *
 * Each layer carries 2n-1 parameters laid out as the n X-rotation angles
 * followed by the n-1 ZZ-rotation angles. The layer unitary is the product
 * (X block) * (ZZ block), so the ZZ brickwall acts on the state first. All
 * gates use the half-angle convention exp(-i*theta*P/2); the Hamiltonian
 * coefficients select the gate layout but do not enter the trainable angles.
 *
 * The non-trainable first layer has the same structure and is driven by the
 * instance's fixed initial_layer_params.
 */
struct HvaAnsatz {
    ProblemInstance instance;
    int n_layers = 1;

    HvaAnsatz(ProblemInstance inst, int layers);

    int n_qubits() const { return instance.n_qubits(); }
    int params_per_layer() const { return 2 * n_qubits() - 1; }
    int parameter_count() const { return n_layers * params_per_layer(); }
};

/// One moment of parallel X rotations; angles[k] drives qubit k.
void apply_x_moment(StateVector& state, Eigen::Ref<const RealVector> angles);

/// Brickwall ZZ moments: even bonds (0,2,...) then odd bonds (1,3,...).
/// angles[i] drives bond (i, i+1).
void apply_zz_brickwall(StateVector& state, Eigen::Ref<const RealVector> angles);

/// |0...0> evolved through the non-trainable first layer.
StateVector initial_state(const ProblemInstance& instance);

/// |psi(theta)>: the initial state evolved through n_layers trainable layers.
StateVector prepare_state(const HvaAnsatz& ansatz, Eigen::Ref<const ParameterVector> params);

/// |d_k psi> by the parameter-shift rule: half the amplitude of the same
/// circuit with theta_k advanced by pi. Norm is 1/2 for a normalized input.
StateVector derivative_state(const HvaAnsatz& ansatz, Eigen::Ref<const ParameterVector> params,
                             int k);

/// Depth in gate moments: 3 per layer (one X moment, two brickwall ZZ
/// moments), independent of the qubit count. The shared non-trainable
/// first layer is not counted.
int circuit_depth(const HvaAnsatz& ansatz);

} // namespace vqsim
