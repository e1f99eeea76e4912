#include "vqsim/ansatz.hpp"

#include <cmath>

namespace vqsim {

HvaAnsatz::HvaAnsatz(ProblemInstance inst, int layers) : instance(std::move(inst)), n_layers(layers) {
    if (n_layers < 1)
        throw DomainError("HvaAnsatz: n_layers must be positive");
    if (instance.initial_layer_params.size() != params_per_layer())
        throw ShapeError("HvaAnsatz: initial layer must carry 2n-1 parameters");
}

void apply_x_moment(StateVector& state, Eigen::Ref<const RealVector> angles) {
    if (angles.size() != state.n_qubits)
        throw ShapeError("apply_x_moment: one angle per qubit required");
    for (int q = 0; q < state.n_qubits; ++q)
        apply_rx_inplace(state, q, angles[q]);
}

void apply_zz_brickwall(StateVector& state, Eigen::Ref<const RealVector> angles) {
    if (angles.size() != state.n_qubits - 1)
        throw ShapeError("apply_zz_brickwall: one angle per bond required");
    for (int i = 0; i + 1 < state.n_qubits; i += 2)
        apply_rzz_inplace(state, i, i + 1, angles[i]);
    for (int i = 1; i + 1 < state.n_qubits; i += 2)
        apply_rzz_inplace(state, i, i + 1, angles[i]);
}

namespace {

// Applies one layer: ZZ brickwall first, then the X moment, matching the
// operator product (X block)*(ZZ block) acting on the state.
void apply_layer(StateVector& state, Eigen::Ref<const RealVector> layer_params) {
    const int n = state.n_qubits;
    apply_zz_brickwall(state, layer_params.segment(n, n - 1));
    apply_x_moment(state, layer_params.head(n));
}

} // namespace

StateVector initial_state(const ProblemInstance& instance) {
    StateVector state = StateVector::zero_state(instance.n_qubits());
    apply_layer(state, instance.initial_layer_params);
    return state;
}

StateVector prepare_state(const HvaAnsatz& ansatz, Eigen::Ref<const ParameterVector> params) {
    if (params.size() != ansatz.parameter_count())
        throw ShapeError("prepare_state: parameter count mismatch");
    StateVector state = initial_state(ansatz.instance);
    const int width = ansatz.params_per_layer();
    for (int layer = 0; layer < ansatz.n_layers; ++layer)
        apply_layer(state, params.segment(layer * width, width));
    return state;
}

StateVector derivative_state(const HvaAnsatz& ansatz, Eigen::Ref<const ParameterVector> params,
                             int k) {
    if (params.size() != ansatz.parameter_count())
        throw ShapeError("derivative_state: parameter count mismatch");
    if (k < 0 || k >= ansatz.parameter_count())
        throw IndexError("derivative_state: parameter index out of range");
    ParameterVector shifted = params;
    shifted[k] += M_PI;
    StateVector state = prepare_state(ansatz, shifted);
    state.amplitudes *= 0.5;
    return state;
}

int circuit_depth(const HvaAnsatz& ansatz) { return 3 * ansatz.n_layers; }

} // namespace vqsim
