#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace geophase {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CMatrix2 = Eigen::Matrix2cd;
using CMatrix4 = Eigen::Matrix4cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Thrown for violated preconditions: bad parameters, step counts, config values.
// The CLI maps this to exit status 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a numerical procedure detects that its own result cannot be
// trusted (unitarity drift, frame matching failure, subspace leakage).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Wraps an angle into (-pi, pi].
inline double wrap_phase(double angle) {
    double r = std::remainder(angle, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    return r;
}

inline double frobenius_distance(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }

// ||U^dagger U - I||_F
template <class Derived>
double unitarity_error(const Eigen::MatrixBase<Derived>& u) {
    const auto n = u.rows();
    return (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).norm();
}

}  // namespace geophase
