#include "vqsim/hamiltonian.hpp"

#include <cmath>
#include <random>
#include <utility>

#include <json.hpp>

#include "vqsim/rng.hpp"

namespace vqsim {

IsingHamiltonian::IsingHamiltonian(int n, std::vector<double> a, std::vector<double> b)
    : n_qubits(n) {
    if (n < 1)
        throw DomainError("IsingHamiltonian: n_qubits must be positive");
    if (a.size() != static_cast<std::size_t>(n) || b.size() != static_cast<std::size_t>(n - 1))
        throw ShapeError("IsingHamiltonian: expected n x coefficients and n-1 zz coefficients");
    x_terms.reserve(a.size());
    for (int k = 0; k < n; ++k)
        x_terms.push_back(PauliTerm::x(a[static_cast<std::size_t>(k)], k));
    zz_terms.reserve(b.size());
    for (int i = 0; i + 1 < n; ++i)
        zz_terms.push_back(PauliTerm::zz(b[static_cast<std::size_t>(i)], i, i + 1));
}

std::vector<double> IsingHamiltonian::x_coefficients() const {
    std::vector<double> a;
    a.reserve(x_terms.size());
    for (const auto& t : x_terms)
        a.push_back(t.coefficient);
    return a;
}

std::vector<double> IsingHamiltonian::zz_coefficients() const {
    std::vector<double> b;
    b.reserve(zz_terms.size());
    for (const auto& t : zz_terms)
        b.push_back(t.coefficient);
    return b;
}

ProblemInstance random_instance(int n_qubits, std::uint64_t seed) {
    if (n_qubits < 2)
        throw DomainError("random_instance: n_qubits must be at least 2");

    std::mt19937_64 coeff_gen(fold_seed(seed, 0));
    std::vector<double> a(static_cast<std::size_t>(n_qubits));
    for (auto& v : a)
        v = uniform_symmetric_open(coeff_gen);
    std::vector<double> b(static_cast<std::size_t>(n_qubits - 1));
    for (auto& v : b)
        v = uniform_symmetric_open(coeff_gen);

    std::mt19937_64 param_gen(fold_seed(seed, 1));
    RealVector init(2 * n_qubits - 1);
    for (Eigen::Index i = 0; i < init.size(); ++i)
        init[i] = M_PI * uniform_symmetric_open(param_gen);

    ProblemInstance instance;
    instance.hamiltonian = IsingHamiltonian(n_qubits, std::move(a), std::move(b));
    instance.initial_layer_params = std::move(init);
    instance.seed = seed;
    return instance;
}

StateVector apply_hamiltonian(const IsingHamiltonian& h, const StateVector& state) {
    if (h.n_qubits != state.n_qubits)
        throw ShapeError("apply_hamiltonian: qubit counts differ");
    StateVector out(state.n_qubits, StateVector::Amplitudes::Zero(state.dim()));
    for (const auto& term : h.x_terms)
        add_pauli_string(state, term, out);
    for (const auto& term : h.zz_terms)
        add_pauli_string(state, term, out);
    return out;
}

double expectation_h(const IsingHamiltonian& h, const StateVector& state) {
    return inner_product(state, apply_hamiltonian(h, state)).real();
}

double expectation_h2(const IsingHamiltonian& h, const StateVector& state) {
    return apply_hamiltonian(h, state).amplitudes.squaredNorm();
}

ComplexMatrix dense_matrix(const IsingHamiltonian& h) {
    if (h.n_qubits > 12)
        throw ResourceError("dense_matrix: refusing n_qubits > 12");
    const std::int64_t dim = std::int64_t{1} << h.n_qubits;
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (const auto& term : h.x_terms) {
        const std::int64_t mask = std::int64_t{1} << term.qubit_a;
        for (std::int64_t col = 0; col < dim; ++col)
            m(col ^ mask, col) += term.coefficient;
    }
    for (const auto& term : h.zz_terms) {
        const std::int64_t mask_a = std::int64_t{1} << term.qubit_a;
        const std::int64_t mask_b = std::int64_t{1} << term.qubit_b;
        for (std::int64_t col = 0; col < dim; ++col) {
            const bool equal_bits = ((col & mask_a) != 0) == ((col & mask_b) != 0);
            m(col, col) += equal_bits ? term.coefficient : -term.coefficient;
        }
    }
    return m;
}

std::string instance_to_json(const ProblemInstance& instance) {
    nlohmann::ordered_json j;
    j["n_qubits"] = instance.n_qubits();
    j["seed"] = instance.seed;
    j["a"] = instance.hamiltonian.x_coefficients();
    j["b"] = instance.hamiltonian.zz_coefficients();
    j["initial_layer_params"] =
        std::vector<double>(instance.initial_layer_params.begin(), instance.initial_layer_params.end());
    return j.dump(2) + "\n";
}

ProblemInstance instance_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const int n = j.at("n_qubits").get<int>();
    ProblemInstance instance;
    instance.seed = j.at("seed").get<std::uint64_t>();
    instance.hamiltonian = IsingHamiltonian(n, j.at("a").get<std::vector<double>>(),
                                            j.at("b").get<std::vector<double>>());
    const auto init = j.at("initial_layer_params").get<std::vector<double>>();
    if (init.size() != static_cast<std::size_t>(2 * n - 1))
        throw ShapeError("instance_from_json: initial_layer_params must have length 2n-1");
    instance.initial_layer_params =
        Eigen::Map<const RealVector>(init.data(), static_cast<Eigen::Index>(init.size()));
    return instance;
}

} // namespace vqsim
