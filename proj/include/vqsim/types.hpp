#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace vqsim {

using Real = double;
using Complex = std::complex<Real>;

using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Trainable parameters (radians). Length is owned by the ansatz.
using ParameterVector = Eigen::VectorXd;

enum class Method { Vqs, Trotter };

inline std::string method_name(Method m) { return m == Method::Vqs ? "vqs" : "trotter"; }

} // namespace vqsim
