#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "vqsim/errors.hpp"
#include "vqsim/pauli.hpp"
#include "vqsim/types.hpp"

namespace vqsim {

/**
 * Dense statevector over 2^n_qubits computational basis states.
 *
 * Amplitude ordering is little-endian: qubit 0 is the least-significant
 * bit of the basis index. A state produced by the preparation routines is
 * normalized to 1e-10; derivative states are the exception and carry norm
 * 1/2 when built from a normalized state.
 */
template <typename RealT = double>
struct BasicStateVector {
    using Real = RealT;
    using Complex = std::complex<Real>;
    using Amplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

    int n_qubits = 0;
    Amplitudes amplitudes;

    BasicStateVector() = default;

    BasicStateVector(int n, Amplitudes amps) : n_qubits(n), amplitudes(std::move(amps)) {
        if (n_qubits < 1)
            throw DomainError("StateVector: n_qubits must be positive");
        if (amplitudes.size() != dim())
            throw ShapeError("StateVector: amplitude count must be 2^n_qubits");
    }

    /// |0...0>
    static BasicStateVector zero_state(int n) {
        if (n < 1)
            throw DomainError("StateVector: n_qubits must be positive");
        Amplitudes amps = Amplitudes::Zero(std::int64_t{1} << n);
        amps[0] = Complex{1, 0};
        return BasicStateVector(n, std::move(amps));
    }

    /// Basis state |index> in little-endian bit order.
    static BasicStateVector basis_state(int n, std::uint64_t index) {
        BasicStateVector s = zero_state(n);
        if (index >= static_cast<std::uint64_t>(s.dim()))
            throw IndexError("StateVector: basis index out of range");
        s.amplitudes[0] = Complex{0, 0};
        s.amplitudes[static_cast<std::int64_t>(index)] = Complex{1, 0};
        return s;
    }

    std::int64_t dim() const { return std::int64_t{1} << n_qubits; }

    Real norm() const { return amplitudes.norm(); }
};

using StateVector = BasicStateVector<double>;

namespace detail {

template <typename RealT>
void check_qubit(const BasicStateVector<RealT>& state, int qubit, const char* what) {
    if (qubit < 0 || qubit >= state.n_qubits)
        throw IndexError(std::string(what) + ": qubit index out of range");
}

} // namespace detail

/// In-place exp(-i*angle*X_q/2). Pairs amplitudes that differ in bit q.
template <typename RealT>
void apply_rx_inplace(BasicStateVector<RealT>& state, int qubit, RealT angle) {
    detail::check_qubit(state, qubit, "apply_rx");
    using C = std::complex<RealT>;
    const RealT c = std::cos(angle / 2);
    const RealT s = std::sin(angle / 2);
    const C m01{0, -s}; // off-diagonal -i sin(angle/2)

    const std::uint64_t mask = std::uint64_t{1} << qubit;
    const std::uint64_t lo = mask - 1;
    const std::uint64_t hi = ~lo;
    const std::uint64_t half = std::uint64_t{1} << (state.n_qubits - 1);
    auto* amps = state.amplitudes.data();
    for (std::uint64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = ((i & hi) << 1) | (i & lo);
        const std::uint64_t i1 = i0 | mask;
        const C a0 = amps[i0];
        const C a1 = amps[i1];
        amps[i0] = c * a0 + m01 * a1;
        amps[i1] = m01 * a0 + c * a1;
    }
}

/// In-place exp(-i*angle*Z_a Z_b/2). Diagonal: the amplitude of basis
/// state x picks up exp(-i*angle*z_a(x)*z_b(x)/2) with z(x) = +1 for a
/// 0 bit and -1 for a 1 bit.
template <typename RealT>
void apply_rzz_inplace(BasicStateVector<RealT>& state, int qubit_a, int qubit_b, RealT angle) {
    detail::check_qubit(state, qubit_a, "apply_rzz");
    detail::check_qubit(state, qubit_b, "apply_rzz");
    if (qubit_a == qubit_b)
        throw IndexError("apply_rzz: qubit indices must differ");
    using C = std::complex<RealT>;
    const C phase_equal{std::cos(angle / 2), -std::sin(angle / 2)};
    const C phase_diff = std::conj(phase_equal);

    const std::uint64_t mask_a = std::uint64_t{1} << qubit_a;
    const std::uint64_t mask_b = std::uint64_t{1} << qubit_b;
    const std::uint64_t dim = static_cast<std::uint64_t>(state.dim());
    auto* amps = state.amplitudes.data();
    for (std::uint64_t i = 0; i < dim; ++i) {
        const bool equal_bits = ((i & mask_a) != 0) == ((i & mask_b) != 0);
        amps[i] *= equal_bits ? phase_equal : phase_diff;
    }
}

template <typename RealT>
BasicStateVector<RealT> apply_rx(BasicStateVector<RealT> state, int qubit, RealT angle) {
    apply_rx_inplace(state, qubit, angle);
    return state;
}

template <typename RealT>
BasicStateVector<RealT> apply_rzz(BasicStateVector<RealT> state, int qubit_a, int qubit_b,
                                  RealT angle) {
    apply_rzz_inplace(state, qubit_a, qubit_b, angle);
    return state;
}

/// Accumulates (coefficient * P)|state> into `out`. Buffers must not alias.
template <typename RealT>
void add_pauli_string(const BasicStateVector<RealT>& state, const PauliTerm& term,
                      BasicStateVector<RealT>& out) {
    if (out.n_qubits != state.n_qubits)
        throw ShapeError("add_pauli_string: qubit counts differ");
    const RealT coeff = static_cast<RealT>(term.coefficient);
    auto* dst = out.amplitudes.data();
    const auto* src = state.amplitudes.data();
    const std::uint64_t dim = static_cast<std::uint64_t>(state.dim());

    if (term.kind == PauliTerm::Kind::X) {
        detail::check_qubit(state, term.qubit_a, "apply_pauli_string");
        const std::uint64_t mask = std::uint64_t{1} << term.qubit_a;
        for (std::uint64_t i = 0; i < dim; ++i)
            dst[i] += coeff * src[i ^ mask];
    } else {
        detail::check_qubit(state, term.qubit_a, "apply_pauli_string");
        detail::check_qubit(state, term.qubit_b, "apply_pauli_string");
        const std::uint64_t mask_a = std::uint64_t{1} << term.qubit_a;
        const std::uint64_t mask_b = std::uint64_t{1} << term.qubit_b;
        for (std::uint64_t i = 0; i < dim; ++i) {
            const bool equal_bits = ((i & mask_a) != 0) == ((i & mask_b) != 0);
            dst[i] += (equal_bits ? coeff : -coeff) * src[i];
        }
    }
}

/// (coefficient * P)|state>. Output is generally unnormalized.
template <typename RealT>
BasicStateVector<RealT> apply_pauli_string(const BasicStateVector<RealT>& state,
                                           const PauliTerm& term) {
    using Amps = typename BasicStateVector<RealT>::Amplitudes;
    BasicStateVector<RealT> out(state.n_qubits, Amps::Zero(state.dim()));
    add_pauli_string(state, term, out);
    return out;
}

/// <bra|ket> with conjugation on the bra.
template <typename RealT>
std::complex<RealT> inner_product(const BasicStateVector<RealT>& bra,
                                  const BasicStateVector<RealT>& ket) {
    if (bra.n_qubits != ket.n_qubits)
        throw ShapeError("inner_product: qubit counts differ");
    return bra.amplitudes.dot(ket.amplitudes);
}

} // namespace vqsim
