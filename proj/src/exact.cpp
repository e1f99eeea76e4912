#include "vqsim/exact.hpp"

#include <complex>
#include <cstring>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "vqsim/errors.hpp"

namespace vqsim {

ExactEvolver::ExactEvolver(const IsingHamiltonian& h) : n_qubits_(h.n_qubits) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(dense_matrix(h));
    if (solver.info() != Eigen::Success)
        throw NumericalConsistencyError("ExactEvolver: eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

StateVector ExactEvolver::evolve(double t, const StateVector& initial_state) const {
    if (initial_state.n_qubits != n_qubits_)
        throw ShapeError("ExactEvolver::evolve: state qubit count mismatch");
    if (t < 0)
        throw DomainError("ExactEvolver::evolve: t must be nonnegative");
    if (t == 0.0)
        return initial_state;

    ComplexVector modes = eigenvectors_.adjoint() * initial_state.amplitudes;
    modes.array() *= (Complex(0.0, -t) * eigenvalues_.array()).exp();
    return StateVector(n_qubits_, eigenvectors_ * modes);
}

namespace {

// Exact byte-level cache key: qubit count, seed, and every coefficient.
// Equal keys imply equal Hamiltonians, so hand-built instances sharing a
// seed cannot collide.
std::string cache_key(const ProblemInstance& instance) {
    std::string key;
    const auto append = [&key](const void* bytes, std::size_t len) {
        key.append(static_cast<const char*>(bytes), len);
    };
    const int n = instance.n_qubits();
    append(&n, sizeof(n));
    append(&instance.seed, sizeof(instance.seed));
    for (const auto& term : instance.hamiltonian.x_terms)
        append(&term.coefficient, sizeof(double));
    for (const auto& term : instance.hamiltonian.zz_terms)
        append(&term.coefficient, sizeof(double));
    return key;
}

std::shared_ptr<const ExactEvolver> cached_evolver(const ProblemInstance& instance) {
    static std::shared_mutex mutex;
    static std::unordered_map<std::string, std::shared_ptr<const ExactEvolver>> cache;

    const std::string key = cache_key(instance);
    {
        std::shared_lock lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    auto evolver = std::make_shared<const ExactEvolver>(instance.hamiltonian);
    std::unique_lock lock(mutex);
    return cache.try_emplace(key, std::move(evolver)).first->second;
}

} // namespace

StateVector exact_evolve(const ProblemInstance& instance, double t,
                         const StateVector& initial_state) {
    return cached_evolver(instance)->evolve(t, initial_state);
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

} // namespace vqsim
