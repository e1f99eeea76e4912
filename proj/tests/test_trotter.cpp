#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "vqsim/errors.hpp"
#include "vqsim/hamiltonian.hpp"
#include "vqsim/statevector.hpp"
#include "vqsim/trotter.hpp"

using vqsim::IsingHamiltonian;
using vqsim::ProblemInstance;
using vqsim::StateVector;
using vqsim::TrotterPlan;

namespace {

ProblemInstance hand_instance(int n, std::vector<double> a, std::vector<double> b) {
    ProblemInstance instance;
    instance.hamiltonian = IsingHamiltonian(n, std::move(a), std::move(b));
    instance.initial_layer_params = vqsim::RealVector::Zero(2 * n - 1);
    return instance;
}

vqsim::ComplexMatrix dense_strang_step(const IsingHamiltonian& h, double dt) {
    const vqsim::ComplexMatrix ua = oracles::expm_minus_i(oracles::dense_x_part(h), dt);
    const vqsim::ComplexMatrix ub_half = oracles::expm_minus_i(oracles::dense_zz_part(h), dt / 2);
    return ub_half * ua * ub_half;
}

double trotter_error(const ProblemInstance& instance, int n_steps, double t,
                     const StateVector& start, const vqsim::ComplexVector& exact) {
    const StateVector approx = vqsim::trotter_evolve(instance, TrotterPlan(n_steps, t), start);
    return (approx.amplitudes - exact).norm();
}

} // namespace

TEST_CASE("a single split is exact when one part vanishes") {
    std::mt19937_64 gen(61);

    const ProblemInstance x_only = hand_instance(3, {0.3, -0.7, 0.5}, {0.0, 0.0});
    const StateVector start_x = oracles::random_state(3, gen);
    const vqsim::ComplexVector exact_x =
        oracles::expm_minus_i(oracles::dense_hamiltonian(x_only.hamiltonian), 0.9) *
        start_x.amplitudes;
    const StateVector evolved_x = vqsim::trotter_evolve(x_only, TrotterPlan(1, 0.9), start_x);
    CHECK(oracles::max_abs_diff(evolved_x.amplitudes, exact_x) < 1e-12);

    const ProblemInstance zz_only = hand_instance(3, {0.0, 0.0, 0.0}, {0.8, -0.4});
    const StateVector start_zz = oracles::random_state(3, gen);
    const vqsim::ComplexVector exact_zz =
        oracles::expm_minus_i(oracles::dense_hamiltonian(zz_only.hamiltonian), 1.3) *
        start_zz.amplitudes;
    const StateVector evolved_zz = vqsim::trotter_evolve(zz_only, TrotterPlan(1, 1.3), start_zz);
    CHECK(oracles::max_abs_diff(evolved_zz.amplitudes, exact_zz) < 1e-12);
}

TEST_CASE("one step reproduces the dense Strang sandwich") {
    std::mt19937_64 gen(62);
    for (int trial = 0; trial < 5; ++trial) {
        const ProblemInstance instance =
            vqsim::random_instance(3, 620 + static_cast<std::uint64_t>(trial));
        const StateVector start = oracles::random_state(3, gen);
        const double t = 0.7;
        const vqsim::ComplexVector dense =
            dense_strang_step(instance.hamiltonian, t) * start.amplitudes;
        const StateVector fast = vqsim::trotter_evolve(instance, TrotterPlan(1, t), start);
        CHECK(oracles::max_abs_diff(fast.amplitudes, dense) < 1e-12);
    }
}

TEST_CASE("merged half steps equal the unmerged step power") {
    std::mt19937_64 gen(63);
    const ProblemInstance instance = vqsim::random_instance(3, 63);
    const StateVector start = oracles::random_state(3, gen);
    const double t = 1.1;
    const int n_steps = 3;
    const vqsim::ComplexMatrix u_step = dense_strang_step(instance.hamiltonian, t / n_steps);
    const vqsim::ComplexVector dense = u_step * u_step * u_step * start.amplitudes;
    const StateVector fast = vqsim::trotter_evolve(instance, TrotterPlan(n_steps, t), start);
    CHECK(oracles::max_abs_diff(fast.amplitudes, dense) < 1e-12);
}

TEST_CASE("halving the step size quarters the error") {
    std::mt19937_64 gen(64);
    const ProblemInstance instance = vqsim::random_instance(3, 64);
    const StateVector start = oracles::random_state(3, gen);
    const double t = 2.0;
    const vqsim::ComplexVector exact =
        oracles::expm_minus_i(oracles::dense_hamiltonian(instance.hamiltonian), t) *
        start.amplitudes;
    const double err_32 = trotter_error(instance, 32, t, start, exact);
    const double err_64 = trotter_error(instance, 64, t, start, exact);
    CHECK(err_64 > 0.0);
    const double ratio = err_32 / err_64;
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
}

TEST_CASE("the error scales as the inverse square of the step count") {
    std::mt19937_64 gen(65);
    const ProblemInstance instance = vqsim::random_instance(3, 65);
    const StateVector start = oracles::random_state(3, gen);
    const double t = 2.0;
    const vqsim::ComplexVector exact =
        oracles::expm_minus_i(oracles::dense_hamiltonian(instance.hamiltonian), t) *
        start.amplitudes;
    std::vector<double> log_n, log_err;
    for (int n_steps : {4, 8, 16, 32, 64}) {
        log_n.push_back(std::log(static_cast<double>(n_steps)));
        log_err.push_back(std::log(trotter_error(instance, n_steps, t, start, exact)));
    }
    const double slope = oracles::ols_slope(log_n, log_err);
    CHECK(slope > -2.3);
    CHECK(slope < -1.7);
}

TEST_CASE("trotter evolution is unitary") {
    std::mt19937_64 gen(66);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + trial % 4;
        const ProblemInstance instance =
            vqsim::random_instance(n, 660 + static_cast<std::uint64_t>(trial));
        const StateVector start = oracles::random_state(n, gen);
        const StateVector evolved =
            vqsim::trotter_evolve(instance, TrotterPlan(1 + trial, 0.5 + 0.3 * trial), start);
        CHECK(std::abs(evolved.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("depth counts merged moments") {
    CHECK(vqsim::trotter_depth(TrotterPlan(1, 1.0)) == 5);
    CHECK(vqsim::trotter_depth(TrotterPlan(2, 1.0)) == 8);
    CHECK(vqsim::trotter_depth(TrotterPlan(10, 1.0)) == 32);
}

TEST_CASE("plan and evolution validation") {
    CHECK_THROWS_AS(TrotterPlan(0, 1.0), vqsim::DomainError);
    CHECK_THROWS_AS(TrotterPlan(-3, 1.0), vqsim::DomainError);
    CHECK_THROWS_AS(TrotterPlan(1, 0.0), vqsim::DomainError);
    CHECK_THROWS_AS(TrotterPlan(1, -2.0), vqsim::DomainError);

    const ProblemInstance instance = vqsim::random_instance(3, 67);
    CHECK_THROWS_AS(
        vqsim::trotter_evolve(instance, TrotterPlan(1, 1.0), StateVector::zero_state(2)),
        vqsim::ShapeError);
}
